#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracns/errors.h"
#include "fracns/experiment.h"
#include "fracns/functionals.h"
#include "fracns/params.h"
#include "fracns/trajectory.h"

namespace {

using fracns::ExperimentConfig;
using fracns::ExperimentResult;

// Command-line overrides; anything unset defers to the config file or the
// built-in defaults.
struct Overrides {
    std::string config_path;
    std::optional<std::string> mode;
    std::optional<int> n;
    std::optional<double> box_len;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<std::string> init_kind;
    std::optional<double> amplitude;
    std::optional<double> sigma;
    std::optional<std::uint64_t> seed;
    std::vector<double> s1_list;
    std::optional<double> fit_t0;
    std::optional<double> fit_t1;
    std::optional<double> t_end;
    std::optional<double> dt;
    std::optional<int> record_every;
    std::optional<double> tolerance;
    std::optional<double> c2;
    std::optional<double> weight_s;
    std::optional<double> weight_k;
    bool no_dealias = false;
    std::optional<std::string> out_dir;
};

void add_common_options(CLI::App* sub, Overrides* o) {
    sub->add_option("--config", o->config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    sub->add_option("--beta", o->beta, "dissipation exponent, in [1/2, 1)");
    sub->add_option("--gamma", o->gamma, "adiabatic exponent, >= 1");
    sub->add_option("--n", o->n, "grid points per dimension");
    sub->add_option("--box-len", o->box_len, "periodic box side length");
    sub->add_option("--init-kind", o->init_kind,
                    "gaussian_bump | mean_zero_bump | incompressible_mode | random_band");
    sub->add_option("--amplitude", o->amplitude, "initial data amplitude");
    sub->add_option("--sigma", o->sigma, "bump width");
    sub->add_option("--seed", o->seed, "random seed");
    sub->add_option("--s1", o->s1_list, "comma-separated regularity orders to track")
        ->delimiter(',');
    sub->add_option("--fit-t0", o->fit_t0, "fit window start");
    sub->add_option("--fit-t1", o->fit_t1, "fit window end");
    sub->add_option("--t-end", o->t_end, "final time");
    sub->add_option("--dt", o->dt, "time step");
    sub->add_option("--record-every", o->record_every, "steps between recorded samples");
    sub->add_option("--tolerance", o->tolerance, "allowed deviation of the fitted exponent");
    sub->add_option("--c2", o->c2, "spectral ball constant");
    sub->add_option("--s", o->weight_s, "energy functional regularity weight");
    sub->add_option("--k", o->weight_k, "cross term coefficient");
    sub->add_flag("--no-dealias", o->no_dealias, "disable the 2/3 truncation");
    sub->add_option("--out", o->out_dir, "output directory for trajectory.csv and report.json");
}

ExperimentConfig build_config(const Overrides& o) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = fracns::load_config(o.config_path);
    if (o.mode) cfg.mode = *o.mode;
    if (o.n) cfg.n = *o.n;
    if (o.box_len) cfg.box_len = *o.box_len;
    if (o.beta) cfg.params.beta = *o.beta;
    if (o.gamma) cfg.params.gamma = *o.gamma;
    if (o.init_kind) cfg.init_kind = *o.init_kind;
    if (o.amplitude) cfg.amplitude = *o.amplitude;
    if (o.sigma) cfg.sigma = *o.sigma;
    if (o.seed) cfg.seed = *o.seed;
    if (!o.s1_list.empty()) cfg.s1_list = o.s1_list;
    if (o.fit_t0) cfg.fit_t0 = *o.fit_t0;
    if (o.fit_t1) cfg.fit_t1 = *o.fit_t1;
    if (o.t_end) cfg.t_end = *o.t_end;
    if (o.dt) cfg.dt = *o.dt;
    if (o.record_every) cfg.record_every = *o.record_every;
    if (o.tolerance) cfg.tolerance = *o.tolerance;
    if (o.c2) cfg.c2 = *o.c2;
    if (o.weight_s) cfg.s = *o.weight_s;
    if (o.weight_k) cfg.k = *o.weight_k;
    if (o.no_dealias) cfg.dealias = false;
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    return cfg;
}

int finish_run(const ExperimentResult& res) {
    std::printf("trajectory: %s\nreport:     %s\n", res.csv_path.c_str(),
                res.report_path.c_str());
    if (res.degenerate) {
        std::printf("[FAIL] zero-amplitude run, nothing to fit\n");
        return 1;
    }
    if (res.fits.empty()) {
        std::printf("[FAIL] no fitted series: %s\n", res.partial_reason.c_str());
        return 1;
    }
    return fracns::compare_rates(res.report_path);
}

int run_linear(const Overrides& o) {
    ExperimentConfig cfg = build_config(o);
    if (cfg.mode != "linear_r2" && cfg.mode != "linear_torus") cfg.mode = "linear_r2";
    return finish_run(fracns::run_experiment(cfg));
}

int run_simulate(const Overrides& o) {
    ExperimentConfig cfg = build_config(o);
    cfg.mode = "nonlinear";
    return finish_run(fracns::run_experiment(cfg));
}

int run_norms(const std::string& state_path, const Overrides& o, double t) {
    fracns::State state = fracns::load_state(state_path);
    fracns::PhysParams params;
    if (o.beta) params.beta = *o.beta;
    if (o.gamma) params.gamma = *o.gamma;
    params.validate();

    fracns::FunctionalConfig fcfg = fracns::FunctionalConfig::for_beta(params.beta);
    if (o.weight_s) fcfg.s = *o.weight_s;
    if (o.weight_k) fcfg.k = *o.weight_k;
    if (o.c2) fcfg.c2 = *o.c2;
    fcfg.validate();

    std::vector<double> s1_list = o.s1_list.empty() ? std::vector<double>{0.0} : o.s1_list;
    fracns::NormTrajectory traj;
    fracns::record(state, t, fcfg, params, s1_list, traj);
    for (const std::string& name : traj.names)
        std::printf("%-14s %.17g\n", name.c_str(), traj.values(name).back());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral decay studies for the 2D fractional compressible system"};
    app.require_subcommand(1);

    Overrides lin_o, sim_o, norm_o;
    std::string state_path, report_path;
    double norms_t = 0.0;

    CLI::App* lin = app.add_subcommand(
        "linear", "exact linear evolution: whole-space quadrature or per-mode box semigroup");
    add_common_options(lin, &lin_o);
    lin->add_option("--mode", lin_o.mode, "linear_r2 | linear_torus")
        ->check(CLI::IsMember({"linear_r2", "linear_torus"}));

    CLI::App* sim = app.add_subcommand("simulate", "nonlinear evolution on the periodic box");
    add_common_options(sim, &sim_o);

    CLI::App* nrm = app.add_subcommand("norms", "evaluate norms of a saved state snapshot");
    nrm->add_option("state", state_path, "state snapshot file")->required()
        ->check(CLI::ExistingFile);
    nrm->add_option("--beta", norm_o.beta, "dissipation exponent");
    nrm->add_option("--gamma", norm_o.gamma, "adiabatic exponent");
    nrm->add_option("--s1", norm_o.s1_list, "comma-separated regularity orders")->delimiter(',');
    nrm->add_option("--s", norm_o.weight_s, "energy functional regularity weight");
    nrm->add_option("--k", norm_o.weight_k, "cross term coefficient");
    nrm->add_option("--c2", norm_o.c2, "spectral ball constant");
    nrm->add_option("--t", norms_t, "time at which the spectral ball is evaluated");

    CLI::App* rep = app.add_subcommand("report", "re-check a report's fitted rates");
    rep->add_option("report", report_path, "report.json produced by a run")->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (lin->parsed()) return run_linear(lin_o);
        if (sim->parsed()) return run_simulate(sim_o);
        if (nrm->parsed()) return run_norms(state_path, norm_o, norms_t);
        return fracns::compare_rates(report_path);
    } catch (const fracns::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
