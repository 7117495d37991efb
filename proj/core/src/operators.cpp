#include "fracns/operators.h"

#include <cmath>
#include <complex>

#include "fracns/errors.h"

namespace fracns {

SpectralField lambda_s(const SpectralField& f, double s) {
    if (s == 0.0) return f;
    if (s < 0.0) {
        const double mean = std::abs(f.mean());
        if (mean > 1e-14 * f.l2_norm())
            throw NegativeOrderOnNonzeroMean("lambda_s with s < 0 needs a mean-zero field");
    }
    SpectralField out(f.grid_ptr());
    for_each_mode(f.grid(), [&](const ModeRef& m) {
        if (m.k1 == 0 && m.k2 == 0) {
            out.coeffs()[m.idx] = 0.0;
            return;
        }
        const double rho = std::hypot(m.xi1, m.xi2);
        out.coeffs()[m.idx] = f.coeffs()[m.idx] * std::pow(rho, s);
    });
    return out;
}

namespace {

// Derivative multiplier for one signed wavenumber; zero at the Nyquist index.
inline double deriv_xi(int k, int n, double step) {
    return std::abs(k) == n / 2 ? 0.0 : step * k;
}

} // namespace

FieldPair gradient(const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField d1(f.grid_ptr());
    SpectralField d2(f.grid_ptr());
    const std::complex<double> iu(0.0, 1.0);
    for_each_mode(g, [&](const ModeRef& m) {
        const double x1 = deriv_xi(m.k1, g.n(), g.xi_step());
        const double x2 = deriv_xi(m.k2, g.n(), g.xi_step());
        d1.coeffs()[m.idx] = iu * x1 * f.coeffs()[m.idx];
        d2.coeffs()[m.idx] = iu * x2 * f.coeffs()[m.idx];
    });
    return {std::move(d1), std::move(d2)};
}

SpectralField divergence(const SpectralField& v1, const SpectralField& v2) {
    if (v1.grid() != v2.grid()) throw GridMismatch("divergence across grids");
    const Grid& g = v1.grid();
    SpectralField out(v1.grid_ptr());
    const std::complex<double> iu(0.0, 1.0);
    for_each_mode(g, [&](const ModeRef& m) {
        const double x1 = deriv_xi(m.k1, g.n(), g.xi_step());
        const double x2 = deriv_xi(m.k2, g.n(), g.xi_step());
        out.coeffs()[m.idx] = iu * (x1 * v1.coeffs()[m.idx] + x2 * v2.coeffs()[m.idx]);
    });
    return out;
}

SpectralField divergence(const FieldPair& v) { return divergence(v.first, v.second); }

SpectralField pointwise_product(const SpectralField& f, const SpectralField& g,
                                bool dealias) {
    if (f.grid() != g.grid()) throw GridMismatch("pointwise_product across grids");
    const SpectralField* lhs = &f;
    const SpectralField* rhs = &g;
    SpectralField ft(f.grid_ptr());
    SpectralField gt(g.grid_ptr());
    if (dealias) {
        ft = f;
        gt = g;
        ft.truncate_two_thirds();
        gt.truncate_two_thirds();
        lhs = &ft;
        rhs = &gt;
    }
    std::vector<double> fp = lhs->to_physical();
    const std::vector<double> gp = rhs->to_physical();
    for (std::size_t i = 0; i < fp.size(); ++i) fp[i] *= gp[i];
    SpectralField out = SpectralField::from_physical(f.grid_ptr(), fp);
    if (dealias) out.truncate_two_thirds();
    return out;
}

SpectralField pointwise_map(const SpectralField& f,
                            const std::function<double(double)>& phi) {
    std::vector<double> fp = f.to_physical();
    for (double& v : fp) {
        v = phi(v);
        if (!std::isfinite(v))
            throw DomainViolation("pointwise_map produced a non-finite value");
    }
    return SpectralField::from_physical(f.grid_ptr(), fp);
}

} // namespace fracns
