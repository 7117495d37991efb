#ifndef FRACNS_LINEAR_THEORY_H
#define FRACNS_LINEAR_THEORY_H

#include <functional>
#include <vector>

#include "fracns/params.h"

namespace fracns {

// Radially symmetric whole-plane initial data in frequency variables.  The
// velocity is decomposed along xi-hat (u_par_hat) and its rotation by +90
// degrees (u_perp_hat), which keeps the profile meaningful for every direction
// of xi.  c0 is the low-frequency amplitude |(sqrt(gamma) a0^, u0^)(0)| that
// drives the lower bound; r_cut is the radius beyond which all three profiles
// are treated as zero.
struct RadialProfile {
    std::function<double(double)> a_hat;
    std::function<double(double)> u_par_hat;
    std::function<double(double)> u_perp_hat;
    double c0 = 0.0;
    double r_cut = 0.0;
};

// Gaussian density bump a0(x) = A exp(-|x|^2 / (2 sigma^2)) with zero
// velocity: a_hat(r) = A 2 pi sigma^2 exp(-sigma^2 r^2 / 2), c0 =
// sqrt(gamma) A 2 pi sigma^2.
RadialProfile gaussian_density_profile(double amplitude, double sigma, double gamma);

// value(t) = 2 pi Int_0^R r^{2 s1 + 1} [gamma |a^|^2 + |u_par|^2 + |u_perp|^2] dr,
// the squared L^2 norm of Lambda^{s1}(sqrt(gamma) a, u) at time t under the
// linearised whole-plane evolution.  Radial Gauss-Legendre panels sized by the
// local phase rate; panel doubling to 1e-8 relative or QuadratureNotConverged.
std::vector<double> r2_norm_trajectory(const RadialProfile& profile, double s1,
                                       const std::vector<double>& times,
                                       const PhysParams& params);

// C_beta with C_beta^2 = (c0^2 / 4) 2 pi Int_0^eta r^{2 s1 + 1} e^{-2 r^{2 beta}} dr.
double lower_bound_constant(double c0, double eta, double s1, double beta);

// Half-amplitude radius eta for lower_bound_constant: largest eta <= r_cut with
// amp(r) >= amp(0)/2 on [0, eta], amp = sqrt(gamma a^2 + upar^2 + uperp^2).
double half_amplitude_radius(const RadialProfile& profile, double gamma);

} // namespace fracns

#endif
