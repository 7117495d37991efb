#ifndef FRACNS_MODES_H
#define FRACNS_MODES_H

#include <array>
#include <complex>
#include <utility>

#include "fracns/params.h"
#include "fracns/spectral_field.h"

namespace fracns {

using cplx = std::complex<double>;
using Mat3 = std::array<std::array<cplx, 3>, 3>;

// Entire functions of the exponential family, evaluated with series
// switchover near 0: phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - z - 1)/z^2,
// and their derivatives.
cplx phi1(cplx z);
cplx phi2(cplx z);
cplx phi1_prime(cplx z);
cplx phi2_prime(cplx z);

// Divided difference (e^x - e^y)/(x - y), exact confluent limit, no
// intermediate overflow for arguments with nonpositive real part.
cplx exp_divided_difference(cplx x, cplx y);

// Roots of lambda^2 + rho^{2 beta} lambda + gamma rho^2 = 0, ordered by
// descending real part, ties broken by ascending imaginary part.
// These drive the coupled (a_hat, u_par) block; Re lambda <= 0 always.
std::pair<cplx, cplx> compressible_eigen(double rho, const PhysParams& p);

// Matrix function selector for the per-mode linear generator.
enum class PhiKind { Exp, Phi1, Phi2 };

// Scalar f(z) for the selected kind.
cplx phi_value(PhiKind f, cplx z);

// f(t B) for the coupled 2x2 block B = [[0, -i rho], [-i gamma rho, -rho^{2 beta}]]
// acting on (a_hat, u_par), plus the scalar factor f(-rho^{2 beta} t) on u_perp.
struct BlockCoeffs {
    cplx m11, m12, m21, m22;
    cplx perp;
};
BlockCoeffs mode_block(PhiKind f, double rho, double t, const PhysParams& p);

// Closed-form exp of the mode generator over time t: the full 3x3 acting on
// (a_hat, u1_hat, u2_hat).  Identity at xi = 0.  Throws NegativeTime.
Mat3 mode_propagator(const std::array<double, 2>& xi, double t, const PhysParams& p);

// Applies the propagator at every lattice mode.  Modes with a Nyquist
// component carry no consistent coupling direction and evolve decoupled:
// a_hat frozen, u_hat damped by exp(-|xi|^{2 beta} t).  Band-limited states
// keep those modes at zero, so the convention never contributes.
State evolve_linear(const State& s, double t, const PhysParams& p);

} // namespace fracns

#endif
