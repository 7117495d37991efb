#include "fracns/modes.h"

#include <cmath>

#include "fracns/errors.h"

namespace fracns {

namespace {

// sinh(w)/w with series switchover; removable singularity at 0.
cplx sinhc(cplx w) {
    if (std::abs(w) >= 1.0) return std::sinh(w) / w;
    const cplx w2 = w * w;
    cplx term(1.0, 0.0);
    cplx sum = term;
    for (int m = 1; m < 24; ++m) {
        term *= w2 / static_cast<double>((2 * m) * (2 * m + 1));
        sum += term;
        if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
}

// Series sum_{m>=0} c_m z^m with c_0 = head and c_{m+1}/c_m = ratio(m).
template <class Ratio>
cplx entire_series(cplx z, double head, Ratio ratio) {
    cplx term(head, 0.0);
    cplx sum = term;
    for (int m = 0; m < 32; ++m) {
        term *= z * ratio(m);
        sum += term;
        if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
}

constexpr double kSeriesRadius = 0.5;

} // namespace

cplx phi1(cplx z) {
    if (std::abs(z) >= kSeriesRadius) return (std::exp(z) - 1.0) / z;
    // sum z^m/(m+1)!
    return entire_series(z, 1.0, [](int m) { return 1.0 / (m + 2.0); });
}

cplx phi2(cplx z) {
    if (std::abs(z) >= kSeriesRadius) return (std::exp(z) - z - 1.0) / (z * z);
    // sum z^m/(m+2)!
    return entire_series(z, 0.5, [](int m) { return 1.0 / (m + 3.0); });
}

cplx phi1_prime(cplx z) {
    if (std::abs(z) >= kSeriesRadius) return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
    // sum (m+1) z^m/(m+2)!
    return entire_series(z, 0.5, [](int m) { return (m + 2.0) / ((m + 1.0) * (m + 3.0)); });
}

cplx phi2_prime(cplx z) {
    if (std::abs(z) >= kSeriesRadius) return (std::exp(z) * (z - 2.0) + z + 2.0) / (z * z * z);
    // sum (m+1) z^m/(m+3)!
    return entire_series(z, 1.0 / 6.0, [](int m) { return (m + 2.0) / ((m + 1.0) * (m + 4.0)); });
}

cplx exp_divided_difference(cplx x, cplx y) {
    const cplx d = x - y;
    const cplx w = 0.5 * d;
    // For widely separated real parts exp((x+y)/2) * sinh(w) would overflow
    // even though the quotient is tame; the direct form has no cancellation.
    if (std::abs(w.real()) > 350.0) return (std::exp(x) - std::exp(y)) / d;
    return std::exp(0.5 * (x + y)) * sinhc(w);
}

namespace {

cplx phi_divided_difference(PhiKind f, cplx x, cplx y) {
    const cplx d = x - y;
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    if (f == PhiKind::Exp) return exp_divided_difference(x, y);
    if (std::abs(d) < 1e-5 * scale) {
        const cplx m = 0.5 * (x + y);
        return f == PhiKind::Phi1 ? phi1_prime(m) : phi2_prime(m);
    }
    return f == PhiKind::Phi1 ? (phi1(x) - phi1(y)) / d : (phi2(x) - phi2(y)) / d;
}

} // namespace

cplx phi_value(PhiKind f, cplx z) {
    switch (f) {
        case PhiKind::Exp: return std::exp(z);
        case PhiKind::Phi1: return phi1(z);
        case PhiKind::Phi2: return phi2(z);
    }
    return {};
}

std::pair<cplx, cplx> compressible_eigen(double rho, const PhysParams& p) {
    if (rho == 0.0) return {cplx(0.0), cplx(0.0)};
    const double b = std::pow(rho, 2.0 * p.beta);
    const double c = p.gamma * rho * rho;
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const cplx lam_minus(-0.5 * (b + sq), 0.0);
        const cplx lam_plus(-2.0 * c / (b + sq), 0.0); // no cancellation
        return {lam_plus, lam_minus};
    }
    const double om = 0.5 * std::sqrt(-disc);
    return {cplx(-0.5 * b, -om), cplx(-0.5 * b, om)};
}

BlockCoeffs mode_block(PhiKind f, double rho, double t, const PhysParams& p) {
    BlockCoeffs out;
    if (rho == 0.0) {
        const cplx v = phi_value(f, cplx(0.0));
        out.m11 = out.m22 = out.perp = v;
        out.m12 = out.m21 = 0.0;
        return out;
    }
    const auto [lam_plus, lam_minus] = compressible_eigen(rho, p);
    const cplx x = lam_plus * t;
    const cplx y = lam_minus * t;
    const cplx fy = phi_value(f, y);
    const cplx dd = phi_divided_difference(f, x, y);
    // f(tB) = f(y) I + t f[x,y] (B - lam_minus I);  B - lam_minus I has
    // diagonal (-lam_minus, lam_plus) and off-diagonal (-i rho, -i gamma rho).
    const cplx irho(0.0, rho);
    out.m11 = fy - t * dd * lam_minus;
    out.m22 = fy + t * dd * lam_plus;
    out.m12 = -t * dd * irho;
    out.m21 = -t * dd * (p.gamma * irho);
    out.perp = phi_value(f, cplx(-std::pow(rho, 2.0 * p.beta) * t, 0.0));
    // With J = diag(1, -1): J B J = conj(B), so f(tB) has a real diagonal and
    // purely imaginary off-diagonal.  Dropping the rounding residue makes
    // conjugate-pair modes evolve into exact conjugates.
    out.m11 = cplx(out.m11.real(), 0.0);
    out.m22 = cplx(out.m22.real(), 0.0);
    out.m12 = cplx(0.0, out.m12.imag());
    out.m21 = cplx(0.0, out.m21.imag());
    out.perp = cplx(out.perp.real(), 0.0);
    return out;
}

Mat3 mode_propagator(const std::array<double, 2>& xi, double t, const PhysParams& p) {
    if (t < 0.0) throw NegativeTime("mode_propagator needs t >= 0");
    const double rho = std::hypot(xi[0], xi[1]);
    Mat3 P{};
    if (rho == 0.0) {
        for (int i = 0; i < 3; ++i) P[i][i] = 1.0;
        return P;
    }
    const BlockCoeffs c = mode_block(PhiKind::Exp, rho, t, p);
    const double e1 = xi[0] / rho;
    const double e2 = xi[1] / rho;
    P[0][0] = c.m11;
    P[0][1] = c.m12 * e1;
    P[0][2] = c.m12 * e2;
    P[1][0] = c.m21 * e1;
    P[2][0] = c.m21 * e2;
    P[1][1] = c.m22 * e1 * e1 + c.perp * e2 * e2;
    P[2][2] = c.m22 * e2 * e2 + c.perp * e1 * e1;
    P[1][2] = (c.m22 - c.perp) * e1 * e2;
    P[2][1] = P[1][2];
    return P;
}

State evolve_linear(const State& s, double t, const PhysParams& p) {
    if (t < 0.0) throw NegativeTime("evolve_linear needs t >= 0");
    if (t == 0.0) return s;  // exact semigroup identity, bitwise
    const Grid& g = s.grid();
    State out(s.grid_ptr());
    const int nyq = g.n() / 2;
    for_each_mode(g, [&](const ModeRef& m) {
        const cplx a = s.a.coeffs()[m.idx];
        const cplx v1 = s.u1.coeffs()[m.idx];
        const cplx v2 = s.u2.coeffs()[m.idx];
        if (m.k1 == 0 && m.k2 == 0) {
            out.a.coeffs()[m.idx] = a;
            out.u1.coeffs()[m.idx] = v1;
            out.u2.coeffs()[m.idx] = v2;
            return;
        }
        const double rho = std::hypot(m.xi1, m.xi2);
        if (std::abs(m.k1) == nyq || m.k2 == nyq) {
            const double h = std::exp(-std::pow(rho, 2.0 * p.beta) * t);
            out.a.coeffs()[m.idx] = a;
            out.u1.coeffs()[m.idx] = h * v1;
            out.u2.coeffs()[m.idx] = h * v2;
            return;
        }
        const BlockCoeffs c = mode_block(PhiKind::Exp, rho, t, p);
        const double e1 = m.xi1 / rho;
        const double e2 = m.xi2 / rho;
        const cplx upar = v1 * e1 + v2 * e2;
        const cplx uperp = -v1 * e2 + v2 * e1;
        const cplx a_new = c.m11 * a + c.m12 * upar;
        const cplx upar_new = c.m21 * a + c.m22 * upar;
        const cplx uperp_new = c.perp * uperp;
        out.a.coeffs()[m.idx] = a_new;
        out.u1.coeffs()[m.idx] = upar_new * e1 - uperp_new * e2;
        out.u2.coeffs()[m.idx] = upar_new * e2 + uperp_new * e1;
    });
    return out;
}

} // namespace fracns
