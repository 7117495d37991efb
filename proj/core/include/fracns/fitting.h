#ifndef FRACNS_FITTING_H
#define FRACNS_FITTING_H

#include <string>

#include "fracns/trajectory.h"

namespace fracns {

// Least-squares power-law fit of one trajectory series and its verdict
// against a theoretical exponent.  verdict = pass iff
// |exponent - theory_exponent| <= tolerance and r_squared >= 0.99.
struct FitResult {
    std::string series;
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_t0 = 0.0;
    double window_t1 = 0.0;
    int n_samples = 0;
    double theory_exponent = 0.0;
    double tolerance = 0.0;
    bool theory_set = false;
    bool verdict = false;
};

inline constexpr double kMinRSquared = 0.99;

// Line through (log(1+t), log value) over samples with t in [t0, t1].
// Throws InsufficientSamples (< 8 samples) and NonPositiveValue.
FitResult fit_power_law(const NormTrajectory& traj, const std::string& series,
                        double t0, double t1);

// Fills the theory fields and the verdict.
void apply_theory(FitResult& fit, double theory_exponent, double tolerance);

} // namespace fracns

#endif
