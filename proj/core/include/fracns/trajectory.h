#ifndef FRACNS_TRAJECTORY_H
#define FRACNS_TRAJECTORY_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fracns/functionals.h"
#include "fracns/spectral_field.h"

namespace fracns {

// Time series of named norms and functionals.  Column order is fixed by the
// first appended row; every later row must carry the same columns.  The
// Lyapunov block is filled by simulate at per-step resolution.
struct NormTrajectory {
    std::vector<double> times;
    std::vector<std::string> names;
    std::map<std::string, std::vector<double>> series;

    bool early_termination = false;
    std::string termination_reason;

    bool lyapunov_filled = false;
    double e0_initial = 0.0;
    double e0_final = 0.0;
    double e0_max_uptick = 0.0;     // largest observed increase between steps
    double d0_time_integral = 0.0;  // trapezoid over every step

    std::size_t size() const { return times.size(); }
    void append(double t, const std::vector<std::pair<std::string, double>>& row);
    const std::vector<double>& values(const std::string& name) const;
    bool has(const std::string& name) const { return series.count(name) != 0; }
};

// Column label for a Lambda^{s1} series: "lam_" + shortest decimal for s1.
std::string s1_label(double s1);

// Appends one full diagnostics row: L2_a, L2_u, Hs, E0, D0, ball_energy,
// besov_minus1 and one lam_<s1> column per requested s1, plus any extras.
// besov_minus1 is evaluated on mean-zeroed copies (dyadic blocks never see
// the mean, so this is the value the homogeneous norm assigns mean-zero data).
void record(const State& state, double t, const FunctionalConfig& cfg,
            const PhysParams& params, const std::vector<double>& s1_list,
            NormTrajectory& traj,
            const std::vector<std::pair<std::string, double>>& extras = {});

// CSV with header t,<names...>; %.17g values, UNIX newlines, atomic replace.
void write_csv(const NormTrajectory& traj, const std::string& path);
NormTrajectory read_csv(const std::string& path);

} // namespace fracns

#endif
