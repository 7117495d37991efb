#include "fracns/fitting.h"

#include <algorithm>
#include <cmath>

#include "fracns/errors.h"

namespace fracns {

FitResult fit_power_law(const NormTrajectory& traj, const std::string& series,
                        double t0, double t1) {
    const std::vector<double>& vals = traj.values(series);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < t0 || t > t1) continue;
        const double v = vals[i];
        if (!(v > 0.0))
            throw NonPositiveValue("fit_power_law: nonpositive sample in " + series);
        xs.push_back(std::log1p(t));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 8)
        throw InsufficientSamples("fit_power_law: need at least 8 samples in the window");

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw InsufficientSamples("fit_power_law: window collapses to one abscissa");

    FitResult fit;
    fit.series = series;
    fit.window_t0 = t0;
    fit.window_t1 = t1;
    fit.n_samples = static_cast<int>(xs.size());
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    if (syy == 0.0) {
        fit.r_squared = 1.0; // constant series fitted exactly by a flat line
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
            ss_res += r * r;
        }
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

void apply_theory(FitResult& fit, double theory_exponent, double tolerance) {
    fit.theory_exponent = theory_exponent;
    fit.tolerance = tolerance;
    fit.theory_set = true;
    fit.verdict = std::abs(fit.exponent - theory_exponent) <= tolerance &&
                  fit.r_squared >= kMinRSquared;
}

} // namespace fracns
