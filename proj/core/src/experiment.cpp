#include "fracns/experiment.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fracns/errors.h"
#include "fracns/grid.h"
#include "fracns/initial_data.h"
#include "fracns/linear_theory.h"
#include "fracns/modes.h"
#include "fracns/solver.h"

namespace fracns {

namespace {

using nlohmann::json;

std::string val_sq_label(double s1) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "val_sq_%g", s1);
    return buf;
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw InvalidConfig("config key " + key + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw InvalidConfig("config key " + key + " must be an integer");
    return v.get<int>();
}

// Writes text to path through a sibling temp file so readers never see a
// partial report.
void atomic_write_text(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidConfig("cannot open " + tmp + " for writing");
        out << text;
        out.flush();
        if (!out) throw InvalidConfig("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidConfig("cannot replace " + path);
}

json config_echo(const ExperimentConfig& c) {
    json j;
    j["mode"] = c.mode;
    j["n"] = c.n;
    j["box_len"] = c.box_len;
    j["beta"] = c.params.beta;
    j["gamma"] = c.params.gamma;
    j["init_kind"] = c.init_kind;
    j["amplitude"] = c.amplitude;
    j["sigma"] = c.sigma;
    j["seed"] = c.seed;
    j["s1_list"] = c.s1_list;
    j["fit_t0"] = c.fit_t0;
    j["fit_t1"] = c.fit_t1;
    j["s"] = c.s;
    j["k"] = c.k;
    j["c2"] = c.c2;
    j["t_end"] = c.t_end;
    j["dt"] = c.dt;
    j["record_every"] = c.record_every;
    j["cfl_limit"] = c.cfl_limit;
    j["dealias"] = c.dealias;
    j["tolerance"] = c.tolerance;
    j["out_dir"] = c.out_dir;
    return j;
}

json fit_to_json(const FitResult& f) {
    json j;
    j["series"] = f.series;
    j["exponent"] = f.exponent;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    j["window_t0"] = f.window_t0;
    j["window_t1"] = f.window_t1;
    j["n_samples"] = f.n_samples;
    j["theory_exponent"] = f.theory_exponent;
    j["tolerance"] = f.tolerance;
    j["verdict"] = f.verdict;
    return j;
}

void write_report(const ExperimentResult& res) {
    const ExperimentConfig& cfg = res.config;
    json j;
    j["config"] = config_echo(cfg);
    j["seed"] = cfg.seed;
    j["degenerate"] = res.degenerate;
    j["partial"] = res.partial;
    j["partial_reason"] = res.partial_reason;
    j["window_clamped"] = res.window_clamped;
    if (cfg.mode != "linear_r2") j["validity_horizon"] = res.validity_horizon;
    j["early_termination"] = res.trajectory.early_termination;
    j["termination_reason"] = res.trajectory.termination_reason;
    if (res.trajectory.lyapunov_filled) {
        json ly;
        ly["e0_initial"] = res.trajectory.e0_initial;
        ly["e0_final"] = res.trajectory.e0_final;
        ly["e0_max_uptick"] = res.trajectory.e0_max_uptick;
        ly["d0_time_integral"] = res.trajectory.d0_time_integral;
        j["lyapunov"] = ly;
    }
    if (cfg.mode == "nonlinear") j["max_nl_fraction"] = res.max_nl_fraction;
    if (!res.lower_bounds.empty()) {
        json lb = json::array();
        for (const LowerBoundCheck& c : res.lower_bounds) {
            json e;
            e["s1"] = c.s1;
            e["c_beta"] = c.c_beta;
            e["min_margin"] = c.min_margin;
            e["pass"] = c.pass;
            lb.push_back(e);
        }
        j["lower_bounds"] = lb;
    }
    json fits = json::array();
    for (const FitResult& f : res.fits) fits.push_back(fit_to_json(f));
    j["fits"] = fits;
    atomic_write_text(res.report_path, j.dump(2) + "\n");
}

// Fit window for box modes: the configured window intersected with the
// validity horizon.  Returns false when the intersection is empty.
bool effective_window(const ExperimentConfig& cfg, ExperimentResult& res,
                      double* t0, double* t1) {
    *t0 = cfg.fit_t0;
    *t1 = std::min(cfg.fit_t1, res.validity_horizon);
    if (*t1 < cfg.fit_t1) res.window_clamped = true;
    if (*t0 < *t1) return true;
    res.partial = true;
    res.partial_reason = "fit window is empty after the validity clamp";
    return false;
}

void fit_box_series(const ExperimentConfig& cfg, ExperimentResult& res) {
    res.validity_horizon = cfg.validity_horizon();
    double t0 = 0.0, t1 = 0.0;
    if (!effective_window(cfg, res, &t0, &t1)) return;
    for (double s1 : cfg.s1_list) {
        const double theory = -(1.0 + s1) / (2.0 * cfg.params.beta);
        try {
            FitResult f = fit_power_law(res.trajectory, s1_label(s1), t0, t1);
            apply_theory(f, theory, cfg.tolerance);
            res.fits.push_back(f);
        } catch (const InsufficientSamples& e) {
            res.partial = true;
            res.partial_reason = e.what();
        } catch (const NonPositiveValue& e) {
            res.partial = true;
            res.partial_reason = e.what();
        }
    }
}

void run_linear_r2(const ExperimentConfig& cfg, ExperimentResult& res) {
    InitKind kind = init_kind_from_string(cfg.init_kind);
    if (kind != InitKind::GaussianBump && kind != InitKind::MeanZeroBump)
        throw InvalidConfig("linear_r2 needs a gaussian_bump or mean_zero_bump profile");
    RadialProfile profile =
        gaussian_density_profile(cfg.amplitude, cfg.sigma, cfg.params.gamma);

    // Log-spaced sample times, 25 per decade, reaching the window top.
    std::vector<double> times{0.0};
    const int j_end = static_cast<int>(std::ceil(25.0 * std::log10(cfg.fit_t1)));
    for (int j = 0; j <= j_end; ++j) times.push_back(std::pow(10.0, j / 25.0));

    std::vector<std::vector<double>> values;
    values.reserve(cfg.s1_list.size());
    for (double s1 : cfg.s1_list)
        values.push_back(r2_norm_trajectory(profile, s1, times, cfg.params));

    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::pair<std::string, double>> row;
        for (std::size_t q = 0; q < cfg.s1_list.size(); ++q)
            row.emplace_back(val_sq_label(cfg.s1_list[q]), values[q][i]);
        res.trajectory.append(times[i], row);
    }

    if (cfg.amplitude == 0.0) {
        res.degenerate = true;
        return;
    }

    for (double s1 : cfg.s1_list) {
        // Squared norms, so the slope doubles: -(1 + s1) / beta.
        const double theory = -(1.0 + s1) / cfg.params.beta;
        FitResult f = fit_power_law(res.trajectory, val_sq_label(s1), cfg.fit_t0, cfg.fit_t1);
        apply_theory(f, theory, cfg.tolerance);
        res.fits.push_back(f);
    }

    const double eta = half_amplitude_radius(profile, cfg.params.gamma);
    for (std::size_t q = 0; q < cfg.s1_list.size(); ++q) {
        const double s1 = cfg.s1_list[q];
        LowerBoundCheck chk;
        chk.s1 = s1;
        chk.c_beta = lower_bound_constant(profile.c0, eta, s1, cfg.params.beta);
        chk.min_margin = 0.0;
        bool first = true;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double t = times[i];
            if (t < cfg.fit_t0 || t > cfg.fit_t1) continue;
            const double floor_sq = 0.25 * chk.c_beta * chk.c_beta *
                                    std::pow(1.0 + t, -(1.0 + s1) / cfg.params.beta);
            const double margin = values[q][i] / floor_sq;
            chk.min_margin = first ? margin : std::min(chk.min_margin, margin);
            first = false;
        }
        chk.pass = !first && chk.min_margin >= 1.0;
        res.lower_bounds.push_back(chk);
    }
}

void run_linear_torus(const ExperimentConfig& cfg, ExperimentResult& res) {
    auto grid = std::make_shared<const Grid>(cfg.n, cfg.box_len);
    InitKind kind = init_kind_from_string(cfg.init_kind);
    State state0 = make_initial(kind, cfg.amplitude, cfg.sigma, grid, cfg.seed);

    FunctionalConfig fcfg = cfg.functional_config();
    const double stride = cfg.dt * cfg.record_every;
    std::vector<double> times;
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * stride;
        if (t >= cfg.t_end - 1e-9) break;
        times.push_back(t);
    }
    times.push_back(cfg.t_end);

    // The propagator is a semigroup, so each sample is exact from t = 0.
    for (double t : times) {
        State st = evolve_linear(state0, t, cfg.params);
        record(st, t, fcfg, cfg.params, cfg.s1_list, res.trajectory);
    }

    if (cfg.amplitude == 0.0) {
        res.degenerate = true;
        res.validity_horizon = cfg.validity_horizon();
        return;
    }
    fit_box_series(cfg, res);
}

void run_nonlinear(const ExperimentConfig& cfg, ExperimentResult& res) {
    auto grid = std::make_shared<const Grid>(cfg.n, cfg.box_len);
    InitKind kind = init_kind_from_string(cfg.init_kind);
    State state0 = make_initial(kind, cfg.amplitude, cfg.sigma, grid, cfg.seed);

    SolverConfig scfg;
    scfg.params = cfg.params;
    scfg.dt = cfg.dt;
    scfg.t_end = cfg.t_end;
    scfg.cfl_limit = cfg.cfl_limit;
    scfg.dealias = cfg.dealias;
    scfg.record_every = cfg.record_every;
    scfg.functionals = cfg.functional_config();

    // Linear co-evolution starts from the same truncated data the solver sees.
    State linear0 = state0;
    if (cfg.dealias) {
        linear0.a.truncate_two_thirds();
        linear0.u1.truncate_two_thirds();
        linear0.u2.truncate_two_thirds();
    }
    Recorder rec = [&](const State& st, double t, NormTrajectory& traj) {
        State lin = evolve_linear(linear0, t, cfg.params);
        State diff = st;
        diff.a -= lin.a;
        diff.u1 -= lin.u1;
        diff.u2 -= lin.u2;
        const double nl = std::sqrt(diff.a.l2_norm() * diff.a.l2_norm() +
                                    diff.u1.l2_norm() * diff.u1.l2_norm() +
                                    diff.u2.l2_norm() * diff.u2.l2_norm());
        record(st, t, scfg.functionals, cfg.params, cfg.s1_list, traj,
               {{"nl_l2", nl}});
    };

    res.trajectory = simulate(state0, scfg, rec);
    if (res.trajectory.early_termination) {
        res.partial = true;
        res.partial_reason = res.trajectory.termination_reason;
    }

    const std::vector<double>& la = res.trajectory.values("L2_a");
    const std::vector<double>& lu = res.trajectory.values("L2_u");
    const std::vector<double>& nl = res.trajectory.values("nl_l2");
    for (std::size_t i = 0; i < nl.size(); ++i) {
        const double total = std::hypot(la[i], lu[i]);
        if (total > 0.0)
            res.max_nl_fraction = std::max(res.max_nl_fraction, nl[i] / total);
    }

    if (cfg.amplitude == 0.0) {
        res.degenerate = true;
        res.validity_horizon = cfg.validity_horizon();
        return;
    }
    fit_box_series(cfg, res);
}

}  // namespace

double ExperimentConfig::validity_horizon() const {
    const double len = box_len == kUnset ? 32.0 * M_PI : box_len;
    const double horizon =
        c2 * std::pow(len / (20.0 * M_PI), 2.0 * params.beta) - 1.0;
    return std::max(0.0, horizon);
}

ExperimentConfig ExperimentConfig::resolved() const {
    ExperimentConfig c = *this;
    if (c.mode != "linear_r2" && c.mode != "linear_torus" && c.mode != "nonlinear")
        throw InvalidConfig("unknown mode: " + c.mode);
    c.params.validate();
    if (c.n < 4 || c.n % 2 != 0) throw InvalidConfig("n must be an even integer >= 4");
    if (!(c.amplitude >= 0.0)) throw InvalidConfig("amplitude must be >= 0");
    if (!(c.sigma > 0.0)) throw InvalidConfig("sigma must be positive");
    if (!(c.dt > 0.0)) throw InvalidConfig("dt must be positive");
    if (c.record_every < 1) throw InvalidConfig("record_every must be >= 1");
    if (!(c.cfl_limit > 0.0)) throw InvalidConfig("cfl_limit must be positive");
    if (c.s1_list.empty()) throw InvalidConfig("s1_list must not be empty");
    for (double s1 : c.s1_list)
        if (!(s1 >= 0.0)) throw InvalidConfig("s1 must be >= 0");
    if (fit_t0 != kUnset && fit_t1 != kUnset && !(fit_t0 < fit_t1))
        throw InvalidConfig("fit window must satisfy fit_t0 < fit_t1");

    const bool r2 = c.mode == "linear_r2";
    if (c.box_len == kUnset) c.box_len = 32.0 * M_PI;
    if (!(c.box_len > 0.0)) throw InvalidConfig("box_len must be positive");
    if (c.tolerance == kUnset) c.tolerance = r2 ? 0.05 : 0.15;
    if (!(c.tolerance > 0.0)) throw InvalidConfig("tolerance must be positive");
    if (c.fit_t0 == kUnset) c.fit_t0 = r2 ? 1e2 : 10.0;
    if (!(c.fit_t0 >= 0.0)) throw InvalidConfig("fit_t0 must be >= 0");

    if (r2) {
        if (c.fit_t1 == kUnset) c.fit_t1 = 1e4;
        if (c.t_end == kUnset) c.t_end = c.fit_t1;
    } else {
        const double horizon = c.validity_horizon();
        if (c.t_end == kUnset)
            c.t_end = std::max(std::ceil(horizon) + 1.0, 10.0 * c.dt);
        if (!(c.t_end > 0.0)) throw InvalidConfig("t_end must be positive");
        if (c.fit_t1 == kUnset) c.fit_t1 = std::min(horizon, c.t_end);
        c.fit_t1 = std::min(c.fit_t1, c.t_end);
    }
    // An empty window after clamping is reported as a partial run, not an
    // error: it means the box cannot resolve the requested time range.
    c.functional_config().validate();
    return c;
}

FunctionalConfig ExperimentConfig::functional_config() const {
    FunctionalConfig f = FunctionalConfig::for_beta(params.beta);
    f.s = s;
    f.k = k;
    f.c2 = c2;
    return f;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidConfig("config must be a flat JSON object");

    ExperimentConfig c;
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        const json& v = item.value();
        if (key == "mode") {
            if (!v.is_string()) throw InvalidConfig("config key mode must be a string");
            c.mode = v.get<std::string>();
        } else if (key == "n") {
            c.n = as_int(v, key);
        } else if (key == "box_len") {
            c.box_len = as_number(v, key);
        } else if (key == "beta") {
            c.params.beta = as_number(v, key);
        } else if (key == "gamma") {
            c.params.gamma = as_number(v, key);
        } else if (key == "init_kind") {
            if (!v.is_string()) throw InvalidConfig("config key init_kind must be a string");
            c.init_kind = v.get<std::string>();
        } else if (key == "amplitude") {
            c.amplitude = as_number(v, key);
        } else if (key == "sigma") {
            c.sigma = as_number(v, key);
        } else if (key == "seed") {
            if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
                throw InvalidConfig("config key seed must be a nonnegative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "s1_list") {
            if (!v.is_array()) throw InvalidConfig("config key s1_list must be an array");
            c.s1_list.clear();
            for (const json& e : v) c.s1_list.push_back(as_number(e, key));
        } else if (key == "fit_t0") {
            c.fit_t0 = as_number(v, key);
        } else if (key == "fit_t1") {
            c.fit_t1 = as_number(v, key);
        } else if (key == "s") {
            c.s = as_number(v, key);
        } else if (key == "k") {
            c.k = as_number(v, key);
        } else if (key == "c2") {
            c.c2 = as_number(v, key);
        } else if (key == "t_end") {
            c.t_end = as_number(v, key);
        } else if (key == "dt") {
            c.dt = as_number(v, key);
        } else if (key == "record_every") {
            c.record_every = as_int(v, key);
        } else if (key == "cfl_limit") {
            c.cfl_limit = as_number(v, key);
        } else if (key == "dealias") {
            if (!v.is_boolean()) throw InvalidConfig("config key dealias must be a boolean");
            c.dealias = v.get<bool>();
        } else if (key == "tolerance") {
            c.tolerance = as_number(v, key);
        } else if (key == "out_dir" || key == "out") {
            if (!v.is_string()) throw InvalidConfig("config key out_dir must be a string");
            c.out_dir = v.get<std::string>();
        } else {
            throw UnknownConfigKey("unknown config key: " + key);
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config(text);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult res;
    res.config = config.resolved();
    const ExperimentConfig& cfg = res.config;

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw InvalidConfig("cannot create output directory " + cfg.out_dir);
    res.csv_path = (std::filesystem::path(cfg.out_dir) / "trajectory.csv").string();
    res.report_path = (std::filesystem::path(cfg.out_dir) / "report.json").string();

    if (cfg.mode == "linear_r2") run_linear_r2(cfg, res);
    else if (cfg.mode == "linear_torus") run_linear_torus(cfg, res);
    else run_nonlinear(cfg, res);

    write_csv(res.trajectory, res.csv_path);
    write_report(res);
    return res;
}

int compare_rates(const std::string& report_path) {
    std::ifstream in(report_path, std::ios::binary);
    if (!in) throw MalformedReport("cannot open report " + report_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw MalformedReport(std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("fits") || !j["fits"].is_array())
        throw MalformedReport("report has no fits array");
    const json& fits = j["fits"];
    // A flagged run may legitimately carry no fits; an unflagged one may not.
    if (fits.empty() && !j.value("degenerate", false) && !j.value("partial", false))
        throw MalformedReport("report has no fitted series");

    bool all_pass = true;
    for (const json& f : fits) {
        for (const char* key : {"series", "exponent", "theory_exponent",
                                "r_squared", "tolerance", "verdict"})
            if (!f.contains(key)) throw MalformedReport(std::string("fit entry lacks ") + key);
        const bool ok = f["verdict"].get<bool>();
        all_pass = all_pass && ok;
        std::printf("[%s] %s: exponent %+.6f (theory %+.6f, tol %.3f), r2 %.6f\n",
                    ok ? "PASS" : "FAIL", f["series"].get<std::string>().c_str(),
                    f["exponent"].get<double>(), f["theory_exponent"].get<double>(),
                    f["tolerance"].get<double>(), f["r_squared"].get<double>());
    }
    bool flagged = false;
    if (j.value("degenerate", false)) {
        std::printf("[FAIL] run is degenerate (zero-amplitude data)\n");
        flagged = true;
    }
    if (j.value("partial", false)) {
        std::printf("[FAIL] run is partial: %s\n",
                    j.value("partial_reason", std::string("unspecified")).c_str());
        flagged = true;
    }
    return (all_pass && !flagged) ? 0 : 1;
}

void save_state(const State& state, const std::string& path) {
    const Grid& g = state.grid();
    const std::vector<double> a = state.a.to_physical();
    const std::vector<double> u1 = state.u1.to_physical();
    const std::vector<double> u2 = state.u2.to_physical();

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidConfig("cannot open " + tmp + " for writing");
        out.write("CNS2STATE", 9);
        const std::uint64_t n = static_cast<std::uint64_t>(g.n());
        const double len = g.box_len();
        out.write(reinterpret_cast<const char*>(&n), sizeof n);
        out.write(reinterpret_cast<const char*>(&len), sizeof len);
        for (const std::vector<double>* v : {&a, &u1, &u2})
            out.write(reinterpret_cast<const char*>(v->data()),
                      static_cast<std::streamsize>(v->size() * sizeof(double)));
        out.flush();
        if (!out) throw InvalidConfig("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidConfig("cannot replace " + path);
}

State load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot open state file " + path);
    char magic[9] = {};
    in.read(magic, 9);
    if (!in || std::string(magic, 9) != "CNS2STATE")
        throw InvalidConfig(path + " is not a state snapshot");
    std::uint64_t n = 0;
    double len = 0.0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&len), sizeof len);
    if (!in || n < 4 || n > (1u << 16) || n % 2 != 0 || !(len > 0.0) || !std::isfinite(len))
        throw InvalidConfig(path + " has a malformed grid header");

    auto grid = std::make_shared<const Grid>(static_cast<int>(n), len);
    const std::size_t count = grid->physical_size();
    State state(grid);
    for (SpectralField* f : {&state.a, &state.u1, &state.u2}) {
        std::vector<double> v(count);
        in.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(count * sizeof(double)));
        if (!in) throw InvalidConfig(path + " is truncated");
        *f = SpectralField::from_physical(grid, v);
    }
    return state;
}

}  // namespace fracns
