#ifndef FRACNS_EXPERIMENT_H
#define FRACNS_EXPERIMENT_H

#include <cstdint>
#include <string>
#include <vector>

#include "fracns/fitting.h"
#include "fracns/functionals.h"
#include "fracns/params.h"
#include "fracns/spectral_field.h"
#include "fracns/trajectory.h"

namespace fracns {

// One decay study: produce a norm trajectory, fit power laws on it, and
// emit a CSV plus a JSON report.  Three modes:
//
//   linear_r2     whole-space linear evolution of a radial profile,
//                 quadrature-exact; series are squared norms val_sq_<s1>
//   linear_torus  exact per-mode semigroup on the periodic box
//   nonlinear     full ETDRK2 evolution on the periodic box
//
// Fields left at kUnset resolve to mode-dependent defaults in resolved().
struct ExperimentConfig {
    static constexpr double kUnset = -1.0;

    std::string mode = "nonlinear";
    int n = 64;
    double box_len = kUnset;  // default 32*pi
    PhysParams params;
    std::string init_kind = "mean_zero_bump";
    double amplitude = 1e-2;
    double sigma = 2.0;
    std::uint64_t seed = 1u;
    std::vector<double> s1_list = {0.0};
    double fit_t0 = kUnset;      // linear_r2: 1e2, else 10
    double fit_t1 = kUnset;      // linear_r2: 1e4, else validity horizon
    double s = 1.5;              // energy functional weights
    double k = 0.01;
    double c2 = 100.0;
    double t_end = kUnset;       // box modes: ceil(validity horizon) + 1
    double dt = 0.25;
    int record_every = 10;
    double cfl_limit = 0.9;
    bool dealias = true;
    double tolerance = kUnset;   // linear_r2: 0.05, else 0.15
    std::string out_dir = ".";

    // Largest t at which the spectral ball |xi|^{2 beta} <= c2 / (1 + t)
    // still reaches down to the tenth lattice shell; box samples past it
    // are depleted and excluded from fits.
    double validity_horizon() const;

    // Copy with every kUnset field replaced by its default.  Throws
    // InvalidConfig on out-of-range values.
    ExperimentConfig resolved() const;

    FunctionalConfig functional_config() const;
};

// Flat JSON object -> config.  Unknown keys throw UnknownConfigKey,
// type mismatches throw InvalidConfig.  Keys mirror the CLI flags:
// mode, n, box_len, beta, gamma, init_kind, amplitude, sigma, seed,
// s1_list, fit_t0, fit_t1, s, k, c2, t_end, dt, record_every,
// cfl_limit, dealias, tolerance, out_dir.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Lower-bound audit for one s1 in linear_r2 mode: value(t) must stay
// above (C_beta / 2)^2 (1 + t)^{-(1 + s1) / beta} inside the fit window.
struct LowerBoundCheck {
    double s1 = 0.0;
    double c_beta = 0.0;
    double min_margin = 0.0;  // min over window of value / bound
    bool pass = false;
};

struct ExperimentResult {
    ExperimentConfig config;  // resolved
    NormTrajectory trajectory;
    std::vector<FitResult> fits;
    std::vector<LowerBoundCheck> lower_bounds;  // linear_r2 only
    double validity_horizon = 0.0;              // box modes only
    bool window_clamped = false;
    bool degenerate = false;  // zero amplitude: no fits attempted
    bool partial = false;     // early termination or empty fit window
    std::string partial_reason;
    double max_nl_fraction = 0.0;  // nonlinear: max nl_l2 / total L2
    std::string csv_path;
    std::string report_path;
};

// Run the configured study and write <out_dir>/trajectory.csv and
// <out_dir>/report.json (both atomically).  The returned struct holds
// everything the report holds.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Re-read a report and print one verdict line per fitted series.
// Returns 0 iff every series passed and the run was not flagged
// degenerate or partial.  Throws MalformedReport on unreadable input.
int compare_rates(const std::string& report_path);

// Physical-space state snapshot, for the norms subcommand.
void save_state(const State& state, const std::string& path);
State load_state(const std::string& path);

}  // namespace fracns

#endif  // FRACNS_EXPERIMENT_H
