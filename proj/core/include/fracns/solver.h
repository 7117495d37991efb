#ifndef FRACNS_SOLVER_H
#define FRACNS_SOLVER_H

#include <functional>

#include "fracns/functionals.h"
#include "fracns/operators.h"
#include "fracns/params.h"
#include "fracns/spectral_field.h"
#include "fracns/trajectory.h"

namespace fracns {

// Admissibility floor: the perturbation form is meaningless near vacuum, so
// any state with min(1 + a) <= this aborts with DomainViolation.
inline constexpr double kVacuumFloor = 0.1;

struct SolverConfig {
    PhysParams params;
    double dt = 0.25;
    double t_end = 10.0;
    double cfl_limit = 0.9;
    bool dealias = true;
    int record_every = 10;
    bool linear_only = false;      // test hook: nonlinear forcing forced to zero
    FunctionalConfig functionals;  // drives the per-step Lyapunov accounting

    void validate() const;
};

// K(a) = gamma a/(1+a) + gamma (1 - (1+a)^{gamma-1})/(1+a), the pressure
// nonlinearity for P(rho) = rho^gamma; identically zero at gamma = 2.
SpectralField k_of_a(const SpectralField& a, double gamma);

// Nonlinear forcing of the perturbation system.
struct RhsPair {
    SpectralField F;
    FieldPair H;

    explicit RhsPair(std::shared_ptr<const Grid> grid)
        : F(grid), H(SpectralField(grid), SpectralField(grid)) {}
};

// F = -div(a u); H = K(a) grad a - (u . grad) u + (a/(1+a)) Lambda^{2 beta} u.
// Quadratic products follow the 2/3 rule when dealias is set; the
// transcendental factors K(a) and a/(1+a) are evaluated pointwise unpadded.
// F's mean vanishes exactly (divergence multiplier is zero at k = 0).
RhsPair nonlinear_rhs(const State& state, const PhysParams& params, bool dealias = true);

// One ETDRK2 step: exact per-mode linear propagation, two-stage phi1/phi2
// rule for the nonlinearity.  Per-(grid, dt, params) coefficient tables are
// cached; not thread safe.  Throws CflViolation when
// dt > cfl_limit * dx / max(1e-12, sup|u|) and DomainViolation near vacuum.
State step(const State& state, double dt, const SolverConfig& cfg);

// Invoked with (state, t, trajectory) at t = 0, every record_every-th step,
// and at the final step.
using Recorder = std::function<void(const State&, double, NormTrajectory&)>;

// Steps state0 to t_end.  The returned trajectory carries whatever the
// recorder appended plus the per-step Lyapunov block (E0 endpoints, max E0
// uptick, trapezoid integral of D0).  On CflViolation or DomainViolation the
// run stops early with early_termination set and the last good state recorded.
NormTrajectory simulate(const State& state0, const SolverConfig& cfg,
                        const Recorder& recorder);

} // namespace fracns

#endif
