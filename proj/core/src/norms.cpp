#include "fracns/norms.h"

#include <algorithm>
#include <cmath>

#include "fracns/errors.h"
#include "fracns/operators.h"

namespace fracns {

NormRequest NormRequest::lp(double p) {
    if (!(p >= 2.0))
        throw InvalidConfig("Lp norms require p >= 2");
    NormRequest r;
    r.kind = Kind::Lp;
    r.p = p;
    return r;
}

NormRequest NormRequest::hs(double s) {
    NormRequest r;
    r.kind = Kind::Hs;
    r.s = s;
    return r;
}

NormRequest NormRequest::hom_hs(double s) {
    NormRequest r;
    r.kind = Kind::HomHs;
    r.s = s;
    return r;
}

NormRequest NormRequest::besov(double s, double rr) {
    if (!(rr == 1.0 || rr == 2.0 || rr == infinity()))
        throw InvalidConfig("Besov summability must be 1, 2, or infinity");
    NormRequest r;
    r.kind = Kind::Besov;
    r.s = s;
    r.r = rr;
    return r;
}

namespace {

void require_mean_zero(const SpectralField& f, const char* what) {
    if (std::abs(f.mean()) > 1e-14 * std::max(1.0, f.l2_norm()))
        throw MeanModeNotZero(std::string(what) + " requires a mean-zero field");
}

double lp_physical(const SpectralField& f, double p) {
    const std::vector<double> fp = f.to_physical();
    if (p == NormRequest::infinity()) {
        double mx = 0.0;
        for (double v : fp) mx = std::max(mx, std::abs(v));
        return mx;
    }
    double sum = 0.0;
    for (double v : fp) sum += std::pow(std::abs(v), p);
    return std::pow(f.grid().cell_area() * sum, 1.0 / p);
}

double sobolev(const SpectralField& f, double s, bool homogeneous) {
    const double L2 = f.grid().box_len() * f.grid().box_len();
    double sum = 0.0;
    for_each_mode(f.grid(), [&](const ModeRef& m) {
        const double r2 = m.xi1 * m.xi1 + m.xi2 * m.xi2;
        double w;
        if (homogeneous) {
            if (m.k1 == 0 && m.k2 == 0) return;
            w = std::pow(r2, s);
        } else {
            w = std::pow(1.0 + r2, s);
        }
        sum += m.weight * w * std::norm(f.coeffs()[m.idx]);
    });
    return std::sqrt(L2 * sum);
}

// Spectral L^2 norm of one dyadic block without forming the block field.
double block_l2(const SpectralField& f, int j, const DyadicPartition& part) {
    const double L2 = f.grid().box_len() * f.grid().box_len();
    double sum = 0.0;
    for_each_mode(f.grid(), [&](const ModeRef& m) {
        if (m.k1 == 0 && m.k2 == 0) return;
        const double rho = std::hypot(m.xi1, m.xi2);
        const double phi = part.phi_at(j, rho);
        if (phi == 0.0) return;
        sum += m.weight * phi * phi * std::norm(f.coeffs()[m.idx]);
    });
    return std::sqrt(L2 * sum);
}

double besov_scalar(const SpectralField& f, double s, double r, const DyadicPartition& part) {
    if (s <= 0.0) require_mean_zero(f, "a homogeneous Besov norm of order <= 0");
    double acc = 0.0;
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        const double b = std::pow(2.0, j * s) * block_l2(f, j, part);
        if (r == NormRequest::infinity())
            acc = std::max(acc, b);
        else if (r == 1.0)
            acc += b;
        else
            acc += b * b;
    }
    return r == 2.0 ? std::sqrt(acc) : acc;
}

} // namespace

double norm(const SpectralField& f, const NormRequest& req, const DyadicPartition& part) {
    switch (req.kind) {
        case NormRequest::Kind::L2:
            return f.l2_norm();
        case NormRequest::Kind::Lp:
            return req.p == 2.0 ? f.l2_norm() : lp_physical(f, req.p);
        case NormRequest::Kind::Hs:
            return sobolev(f, req.s, false);
        case NormRequest::Kind::HomHs:
            if (req.s <= 0.0) require_mean_zero(f, "a homogeneous Sobolev norm of order <= 0");
            return sobolev(f, req.s, true);
        case NormRequest::Kind::Besov:
            return besov_scalar(f, req.s, req.r, part);
    }
    throw InvalidConfig("unknown norm kind");
}

double norm(const SpectralField& f, const NormRequest& req) {
    const DyadicPartition part(f.grid());
    return norm(f, req, part);
}

double besov_vector(const State& st, double order, double r, const DyadicPartition& part) {
    for (const SpectralField* f : {&st.a, &st.u1, &st.u2})
        if (order <= 0.0) require_mean_zero(*f, "a homogeneous Besov norm of order <= 0");
    double acc = 0.0;
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        const double ba = block_l2(st.a, j, part);
        const double b1 = block_l2(st.u1, j, part);
        const double b2 = block_l2(st.u2, j, part);
        const double b = std::pow(2.0, j * order) * std::sqrt(ba * ba + b1 * b1 + b2 * b2);
        if (r == NormRequest::infinity())
            acc = std::max(acc, b);
        else if (r == 1.0)
            acc += b;
        else
            acc += b * b;
    }
    return r == 2.0 ? std::sqrt(acc) : acc;
}

double gn_exponent(double s, double s1, double s2, double p) {
    if (!(s2 > s1 && s1 >= 0.0 && s >= 0.0 && p >= 2.0))
        throw InvalidConfig("gn_exponent requires s2 > s1 >= 0, s >= 0, p >= 2");
    const double lhs = s + 1.0 - (p == NormRequest::infinity() ? 0.0 : 2.0 / p);
    const double theta = (lhs - s1) / (s2 - s1);
    if (theta < -1e-12 || theta > 1.0 + 1e-12)
        throw NoAdmissibleTheta("no interpolation exponent in [0, 1]");
    return std::clamp(theta, 0.0, 1.0);
}

double gn_ratio(const SpectralField& f, double s, double s1, double s2, double p) {
    const double theta = gn_exponent(s, s1, s2, p);
    const double base = f.l2_norm();
    if (base == 0.0) throw ZeroField("gn_ratio of the zero field");
    const double num = norm(lambda_s(f, s), NormRequest::lp(p));
    const double d1 = lambda_s(f, s1).l2_norm();
    const double d2 = lambda_s(f, s2).l2_norm();
    if (d1 == 0.0 || d2 == 0.0) throw ZeroField("gn_ratio with a vanishing interpolation factor");
    return num / (std::pow(d1, 1.0 - theta) * std::pow(d2, theta));
}

} // namespace fracns
