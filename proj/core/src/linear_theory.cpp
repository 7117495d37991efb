#include "fracns/linear_theory.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fracns/errors.h"
#include "fracns/modes.h"
#include "fracns/quadrature.h"

namespace fracns {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
// e^{-kTailExponent} is below any tolerance in play; modes with
// rho^{2 beta} t (or the slow-branch exponent) past it contribute nothing.
constexpr double kTailExponent = 80.0;

double amplitude_at(const RadialProfile& profile, double gamma, double r) {
    const double a = profile.a_hat(r);
    const double up = profile.u_par_hat(r);
    const double uq = profile.u_perp_hat(r);
    return std::sqrt(gamma * a * a + up * up + uq * uq);
}

// Radius past which every mode has decayed below e^{-kTailExponent} at time t.
double decayed_radius(double t, const PhysParams& params) {
    const double fast = std::pow(kTailExponent / t, 1.0 / (2.0 * params.beta));
    if (params.beta == 0.5) return fast;
    // For beta > 1/2 the real-eigenvalue branch decays like
    // exp(-gamma r^{2 - 2 beta} t) at large r, which can be the slower one.
    const double slow = std::pow(kTailExponent / (params.gamma * t),
                                 1.0 / (2.0 - 2.0 * params.beta));
    return std::max(fast, slow);
}

std::vector<double> linspace_edges(double a, double b, int panels) {
    std::vector<double> edges(panels + 1);
    for (int i = 0; i <= panels; ++i) edges[i] = a + (b - a) * i / panels;
    edges.front() = a;
    edges.back() = b;
    return edges;
}

// Panel count sized so one panel spans at most ~20 radians of the fastest
// phase or envelope variation; 32-node Gauss-Legendre resolves that easily
// and panel doubling verifies it.
int panel_budget(double radius, double t, const PhysParams& params) {
    if (t <= 0.0 || radius <= 0.0) return 8;
    const double oscillation = std::sqrt(params.gamma) * t;
    const double envelope =
        2.0 * params.beta * std::pow(radius, 2.0 * params.beta - 1.0) * t;
    const double panels = (oscillation + envelope) * radius / 20.0;
    return std::clamp(static_cast<int>(std::ceil(panels)), 8, 40000);
}

} // namespace

RadialProfile gaussian_density_profile(double amplitude, double sigma, double gamma) {
    if (sigma <= 0.0) throw InvalidConfig("gaussian_density_profile: sigma must be positive");
    RadialProfile profile;
    const double scale = amplitude * kTwoPi * sigma * sigma;
    profile.a_hat = [scale, sigma](double r) {
        return scale * std::exp(-0.5 * sigma * sigma * r * r);
    };
    profile.u_par_hat = [](double) { return 0.0; };
    profile.u_perp_hat = [](double) { return 0.0; };
    profile.c0 = std::sqrt(gamma) * std::abs(scale);
    profile.r_cut = 12.0 / sigma;
    return profile;
}

double half_amplitude_radius(const RadialProfile& profile, double gamma) {
    if (profile.r_cut <= 0.0) throw InvalidConfig("half_amplitude_radius: r_cut must be positive");
    const double amp0 = amplitude_at(profile, gamma, 0.0);
    if (amp0 == 0.0) throw ZeroField("half_amplitude_radius: profile vanishes at r = 0");
    const double target = 0.5 * amp0;
    const int scan = 4096;
    double lo = 0.0;
    double hi = -1.0;
    for (int i = 1; i <= scan; ++i) {
        const double r = profile.r_cut * i / scan;
        if (amplitude_at(profile, gamma, r) < target) {
            hi = r;
            break;
        }
        lo = r;
    }
    if (hi < 0.0) return profile.r_cut;
    for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (amplitude_at(profile, gamma, mid) >= target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> r2_norm_trajectory(const RadialProfile& profile, double s1,
                                       const std::vector<double>& times,
                                       const PhysParams& params) {
    params.validate();
    if (s1 < 0.0) throw InvalidConfig("r2_norm_trajectory: s1 must be nonnegative");
    if (profile.r_cut <= 0.0) throw InvalidConfig("r2_norm_trajectory: r_cut must be positive");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) throw NegativeTime("r2_norm_trajectory: negative time");
        if (i > 0 && times[i] <= times[i - 1])
            throw NonMonotoneTime("r2_norm_trajectory: times must be strictly increasing");
    }
    const double gamma = params.gamma;
    const double two_beta = 2.0 * params.beta;
    std::vector<double> values;
    values.reserve(times.size());
    for (double t : times) {
        const double radius =
            (t > 0.0) ? std::min(profile.r_cut, decayed_radius(t, params)) : profile.r_cut;
        auto integrand = [&](double r) {
            const double a0 = profile.a_hat(r);
            const double up0 = profile.u_par_hat(r);
            const double uq0 = profile.u_perp_hat(r);
            const BlockCoeffs coef = mode_block(PhiKind::Exp, r, t, params);
            const std::complex<double> a_t = coef.m11 * a0 + coef.m12 * up0;
            const std::complex<double> up_t = coef.m21 * a0 + coef.m22 * up0;
            const double uq_t = std::exp(-std::pow(r, two_beta) * t) * uq0;
            const double density = gamma * std::norm(a_t) + std::norm(up_t) + uq_t * uq_t;
            return std::pow(r, 2.0 * s1 + 1.0) * density;
        };
        const int panels = panel_budget(radius, t, params);
        const double integral =
            integrate_adaptive(integrand, linspace_edges(0.0, radius, panels), 1e-8);
        values.push_back(kTwoPi * integral);
    }
    return values;
}

double lower_bound_constant(double c0, double eta, double s1, double beta) {
    if (c0 < 0.0) throw InvalidConfig("lower_bound_constant: c0 must be nonnegative");
    if (s1 < 0.0) throw InvalidConfig("lower_bound_constant: s1 must be nonnegative");
    if (eta <= 0.0) throw InvalidConfig("lower_bound_constant: eta must be positive");
    if (c0 == 0.0) return 0.0;
    const double two_beta = 2.0 * beta;
    auto integrand = [&](double r) {
        return std::pow(r, 2.0 * s1 + 1.0) * std::exp(-2.0 * std::pow(r, two_beta));
    };
    const double integral =
        integrate_adaptive(integrand, linspace_edges(0.0, eta, 8), 1e-10);
    const double c_sq = 0.25 * c0 * c0 * kTwoPi * integral;
    return std::sqrt(c_sq);
}

} // namespace fracns
