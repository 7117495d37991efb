// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  The box runs share one configuration (n = 512, L = 200 pi,
// beta = 1/2): criteria 4 and 5 read run A, criterion 10 repeats it as run B
// and compares CSV bytes, criterion 9 repeats it with a nonzero-mean bump as
// run C to make relative mass drift meaningful.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracns/dyadic.h"
#include "fracns/experiment.h"
#include "fracns/fitting.h"
#include "fracns/functionals.h"
#include "fracns/grid.h"
#include "fracns/initial_data.h"
#include "fracns/linear_theory.h"
#include "fracns/modes.h"
#include "fracns/solver.h"
#include "fracns/spectral_field.h"
#include "fracns/trajectory.h"
#include "oracles.h"

namespace {

using namespace fracns;

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct CriterionResult {
    bool ok = false;
    std::string detail = "not evaluated";
};

struct Gate {
    std::array<CriterionResult, 10> results;

    void set(int idx, bool ok, std::string detail) {
        results[idx - 1] = {ok, std::move(detail)};
    }
    void fail(int idx, const std::string& why) { set(idx, false, why); }

    int report() const {
        int failures = 0;
        for (int i = 0; i < 10; ++i) {
            const CriterionResult& r = results[i];
            std::printf("[%s] criterion %d: %s\n", r.ok ? "PASS" : "FAIL", i + 1,
                        r.detail.c_str());
            if (!r.ok) ++failures;
        }
        return failures;
    }
};

const FitResult* find_fit(const ExperimentResult& res, const std::string& series) {
    for (const FitResult& f : res.fits)
        if (f.series == series) return &f;
    return nullptr;
}

// Criterion 3: C_beta^2 at (c0, eta, s1, beta) = (1, 1, 0, 1/2) against the
// closed form (pi/2)(1/4 - (3/4) e^{-2}).
void check_cbeta_oracle(Gate& gate) {
    const double c = lower_bound_constant(1.0, 1.0, 0.0, 0.5);
    const double want = 0.5 * M_PI * (0.25 - 0.75 * std::exp(-2.0));
    const double rel = std::abs(c * c - want) / want;
    gate.set(3, rel <= 1e-8,
             strf("lower_bound_constant(1,1,0,1/2)^2 vs closed form, rel err %.2e", rel));
}

// Criterion 6: the incompressible single-mode datum solves the full nonlinear
// system; after 100 steps the live mode must match (A/2) e^{-|xi|^{2 beta} t}.
void check_exact_solution(Gate& gate) {
    auto grid = std::make_shared<const Grid>(64, 2.0 * M_PI);
    const double amplitude = 1e-2;
    State st = make_initial(InitKind::IncompressibleMode, amplitude, 1.0, grid, 1);

    SolverConfig cfg;
    cfg.params.beta = 0.5;
    cfg.params.gamma = 1.0;
    cfg.dt = 0.05;
    cfg.functionals = FunctionalConfig::for_beta(cfg.params.beta);
    for (int k = 0; k < 100; ++k) st = step(st, cfg.dt, cfg);

    // |xi| = 1 for the (1, 0) mode on L = 2 pi, so the factor is e^{-t}.
    const double want = 0.5 * amplitude * std::exp(-5.0);
    const double rel = std::max(std::abs(st.u2.at(1, 0) - want), std::abs(st.u2.at(63, 0) - want)) / want;
    const bool untouched = st.a.l2_norm() == 0.0 && st.u1.l2_norm() == 0.0;
    gate.set(6, rel <= 1e-8 && untouched,
             strf("single-mode decay rel err %.2e after 100 steps, a and u1 %s", rel,
                  untouched ? "exactly zero" : "CONTAMINATED"));
}

// Criterion 7: partition of unity over the dyadic blocks at random lattice
// wavenumbers: telescoping sum, square-sum bounds, support disjointness.
void check_partition(Gate& gate) {
    const Grid grid(256, 35.0);
    const DyadicPartition part(grid);
    std::mt19937_64 rng(107);

    double worst_sum = 0.0, min_sq = 2.0, max_sq = 0.0;
    bool disjoint = true;
    for (int trial = 0; trial < 1000; ++trial) {
        int k1 = 0, k2 = 0;
        while (k1 == 0 && k2 == 0) {
            k1 = static_cast<int>(rng() % 256) - 127;  // (-n/2, n/2]
            k2 = static_cast<int>(rng() % 256) - 127;
        }
        const double rho = 2.0 * M_PI / grid.box_len() * std::hypot(k1, k2);

        double sum = 0.0, sum_sq = 0.0;
        for (int j = part.j_min(); j <= part.j_max(); ++j) {
            const double v = part.phi_at(j, rho);
            sum += v;
            sum_sq += v * v;
            for (int jp = j + 2; jp <= part.j_max(); ++jp)
                if (v * part.phi_at(jp, rho) != 0.0) disjoint = false;
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        min_sq = std::min(min_sq, sum_sq);
        max_sq = std::max(max_sq, sum_sq);
    }
    const bool ok = worst_sum <= 1e-10 && min_sq >= 0.5 - 1e-9 && max_sq <= 1.0 + 1e-9 &&
                    disjoint;
    gate.set(7, ok,
             strf("1000 lattice points: |sum-1| <= %.2e, square-sum in [%.6f, %.6f], "
                  "far blocks %s",
                  worst_sum, min_sq, max_sq, disjoint ? "exactly disjoint" : "OVERLAP"));
}

// Criterion 8: closed-form mode propagator against the scaling-and-squaring
// exponential of the generator, plus the semigroup identity.
void check_propagator_oracle(Gate& gate) {
    std::mt19937_64 rng(2026);
    double worst = 0.0, worst_semi = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double rho = std::pow(10.0, 3.0 * oracles::uniform01(rng) - 2.0);
        const double ang = 2.0 * M_PI * oracles::uniform01(rng);
        const double t = std::pow(10.0, 2.0 * oracles::uniform01(rng) - 1.0);
        PhysParams p;
        p.beta = 0.5 + 0.4999 * oracles::uniform01(rng);
        p.gamma = 1.0 + 3.0 * oracles::uniform01(rng);
        const std::array<double, 2> xi{rho * std::cos(ang), rho * std::sin(ang)};

        oracles::Mat<3> gen = oracles::mode_generator(xi[0], xi[1], p.beta, p.gamma);
        for (auto& row : gen)
            for (auto& v : row) v *= t;
        const oracles::Mat<3> want = oracles::expm(gen);
        const Mat3 got = mode_propagator(xi, t, p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(got[i][j] - want[i][j]));

        const double s = t * oracles::uniform01(rng);
        const Mat3 first = mode_propagator(xi, s, p);
        const Mat3 second = mode_propagator(xi, t - s, p);
        const Mat3 chained = oracles::mat_mul(second, first);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst_semi = std::max(worst_semi, std::abs(got[i][j] - chained[i][j]));
    }
    gate.set(8, worst <= 1e-10 && worst_semi <= 1e-11,
             strf("1000 modes: |exp - oracle| <= %.2e, semigroup gap <= %.2e", worst,
                  worst_semi));
}

// Criteria 1 and 2: whole-plane linear runs at (beta, s1) in
// {0.5, 0.75} x {0, 1}: sharp exponent with tight r^2, and the lower-bound
// floor at every in-window sample.
void check_linear_rates(Gate& gate) {
    double worst_dev = 0.0, min_r2 = 1.0, min_margin = 1e300;
    int fit_count = 0, lb_count = 0;
    bool ok1 = true, ok2 = true;

    for (double beta : {0.5, 0.75}) {
        std::fprintf(stderr, "acceptance: linear_r2 run at beta = %g\n", beta);
        ExperimentConfig cfg;
        cfg.mode = "linear_r2";
        cfg.init_kind = "gaussian_bump";
        cfg.params.beta = beta;
        cfg.params.gamma = 1.0;
        cfg.amplitude = 1e-2;
        cfg.sigma = 2.0;
        cfg.s1_list = {0.0, 1.0};
        cfg.out_dir = strf("accept_out/linear_b%02.0f", 100.0 * beta);
        const ExperimentResult res = run_experiment(cfg);

        if (res.degenerate || res.partial) ok1 = false;
        for (double s1 : {0.0, 1.0}) {
            const FitResult* f = find_fit(res, strf("val_sq_%g", s1));
            if (f == nullptr) {
                ok1 = false;
                continue;
            }
            ++fit_count;
            const double theory = -(1.0 + s1) / beta;
            const double dev = std::abs(f->exponent - theory);
            worst_dev = std::max(worst_dev, dev);
            min_r2 = std::min(min_r2, f->r_squared);
            if (dev > 0.05 || f->r_squared < 0.999 || !f->verdict) ok1 = false;
        }
        for (const LowerBoundCheck& lb : res.lower_bounds) {
            ++lb_count;
            min_margin = std::min(min_margin, lb.min_margin);
            if (!lb.pass || lb.c_beta <= 0.0) ok2 = false;
        }
    }

    gate.set(1, ok1 && fit_count == 4,
             strf("%d linear fits: worst |exponent - theory| = %.3f, min r^2 = %.6f",
                  fit_count, worst_dev, min_r2));
    gate.set(2, ok2 && lb_count == 4,
             strf("%d lower bounds hold at every in-window sample, min margin %.2f",
                  lb_count, min_margin));
}

ExperimentConfig box_config(const std::string& out_dir) {
    ExperimentConfig cfg;
    cfg.mode = "nonlinear";
    cfg.n = 512;
    cfg.box_len = 200.0 * M_PI;
    cfg.params.beta = 0.5;
    cfg.params.gamma = 1.0;
    cfg.init_kind = "mean_zero_bump";
    cfg.amplitude = 1e-2;
    cfg.sigma = 2.0;
    cfg.s1_list = {0.0};
    cfg.dt = 0.25;
    cfg.record_every = 10;
    // The default c2 = 100 promises a horizon of 999 on this box, but the
    // shrinking ball runs out of lattice modes well before that; c2 = 20
    // ends the fit window (t = 199) while the -1 slope is still resolved.
    cfg.c2 = 20.0;
    cfg.out_dir = out_dir;
    return cfg;
}

// Criteria 4 and 5: the desk-scale nonlinear decay run and its Lyapunov
// accounting; criterion 10 repeats it and compares trajectory bytes.
void check_box_decay(Gate& gate) {
    std::fprintf(stderr, "acceptance: nonlinear box run A (n = 512, 800 steps)\n");
    const ExperimentResult res = run_experiment(box_config("accept_out/boxA"));

    const FitResult* f = find_fit(res, "lam_0");
    if (f == nullptr || res.partial || res.degenerate || res.trajectory.early_termination) {
        gate.fail(4, "box run produced no usable lam_0 fit");
    } else {
        gate.set(4, f->verdict && std::abs(f->exponent + 1.0) <= 0.15,
                 strf("L2 decay exponent %.3f vs -1 (tolerance 0.15, window [%g, %g], "
                      "r^2 = %.4f)",
                      f->exponent, f->window_t0, f->window_t1, f->r_squared));
    }

    const NormTrajectory& traj = res.trajectory;
    if (!traj.lyapunov_filled || traj.size() < 2 || !traj.has("E0")) {
        gate.fail(5, "box run carries no Lyapunov data");
    } else {
        const std::vector<double>& e0 = traj.values("E0");
        const double slack = 1e-10 * e0.front();
        double worst_uptick = 0.0;
        for (std::size_t i = 1; i < e0.size(); ++i)
            worst_uptick = std::max(worst_uptick, e0[i] - e0[i - 1]);
        const double ratio = traj.d0_time_integral / e0.front();
        const bool ok = worst_uptick <= slack && traj.e0_max_uptick <= slack &&
                        ratio <= 1.05;
        gate.set(5, ok,
                 strf("E0 monotone to %.1e slack (worst uptick %.1e), "
                      "integral D0 dt = %.3f E0(0)",
                      slack, std::max(worst_uptick, traj.e0_max_uptick), ratio));
    }

    std::fprintf(stderr, "acceptance: nonlinear box run B (determinism repeat)\n");
    const ExperimentResult rerun = run_experiment(box_config("accept_out/boxB"));
    const std::string bytes_a = slurp(res.csv_path);
    const std::string bytes_b = slurp(rerun.csv_path);
    gate.set(10, !bytes_a.empty() && bytes_a == bytes_b,
             strf("repeated run: %zu CSV bytes, %s", bytes_a.size(),
                  bytes_a == bytes_b ? "bitwise identical" : "DIFFER"));
}

// Criterion 9: mass conservation on the box run (run C keeps the bump mean so
// the drift is relative to a nonzero mass) and Hermitian symmetry after every
// operation in the library.
void check_conservation(Gate& gate) {
    std::fprintf(stderr, "acceptance: nonlinear box run C (mass and symmetry)\n");
    const ExperimentConfig cfg = box_config("accept_out/boxC").resolved();
    auto grid = std::make_shared<const Grid>(cfg.n, cfg.box_len);
    State state0 = make_initial(InitKind::GaussianBump, cfg.amplitude, cfg.sigma, grid,
                                cfg.seed);

    SolverConfig scfg;
    scfg.params = cfg.params;
    scfg.dt = cfg.dt;
    scfg.t_end = cfg.t_end;
    scfg.record_every = cfg.record_every;
    scfg.functionals = cfg.functional_config();

    const double mass0 = std::abs(state0.a.mean());
    double drift = 0.0, run_defect = 0.0;
    Recorder rec = [&](const State& st, double, NormTrajectory&) {
        drift = std::max(drift, std::abs(st.a.mean() - state0.a.mean()) / mass0);
        run_defect = std::max({run_defect, st.a.hermitian_defect(),
                               st.u1.hermitian_defect(), st.u2.hermitian_defect()});
    };
    const NormTrajectory traj = simulate(state0, scfg, rec);
    const bool run_ok = !traj.early_termination && drift <= 1e-12 && run_defect <= 1e-13;

    // Symmetry scan: every operation applied to generic Hermitian data.
    auto small = std::make_shared<const Grid>(64, 21.0);
    const SpectralField f = oracles::random_field(small, 31, 0.5);
    const SpectralField g = oracles::random_field(small, 32, 0.5);
    const FieldPair grad = gradient(f);
    double scan = std::max({f.hermitian_defect(), lambda_s(f, 1.3).hermitian_defect(),
                            grad.first.hermitian_defect(), grad.second.hermitian_defect(),
                            divergence(grad).hermitian_defect(),
                            pointwise_product(f, g, true).hermitian_defect(),
                            pointwise_map(f, [](double x) { return x / (2.0 + x); })
                                .hermitian_defect()});
    State rnd = make_initial(InitKind::RandomBand, 5e-3, 1.0, small, 33);
    SolverConfig small_cfg;
    small_cfg.dt = 0.1;
    small_cfg.functionals = FunctionalConfig::for_beta(small_cfg.params.beta);
    const State lin = evolve_linear(rnd, 0.7, small_cfg.params);
    const State stepped = step(rnd, small_cfg.dt, small_cfg);
    for (const State* s : {&lin, &stepped})
        scan = std::max({scan, s->a.hermitian_defect(), s->u1.hermitian_defect(),
                         s->u2.hermitian_defect()});

    gate.set(9, run_ok && scan <= 1e-13,
             strf("mass drift %.1e relative over the box run, symmetry defect <= %.1e "
                  "(run) / %.1e (operation scan)",
                  drift, run_defect, scan));
}

}  // namespace

int main() {
    std::error_code ec;
    std::filesystem::remove_all("accept_out", ec);

    Gate gate;
    try {
        check_cbeta_oracle(gate);
    } catch (const std::exception& e) {
        gate.fail(3, strf("exception: %s", e.what()));
    }
    try {
        check_exact_solution(gate);
    } catch (const std::exception& e) {
        gate.fail(6, strf("exception: %s", e.what()));
    }
    try {
        check_partition(gate);
    } catch (const std::exception& e) {
        gate.fail(7, strf("exception: %s", e.what()));
    }
    try {
        check_propagator_oracle(gate);
    } catch (const std::exception& e) {
        gate.fail(8, strf("exception: %s", e.what()));
    }
    try {
        check_linear_rates(gate);
    } catch (const std::exception& e) {
        gate.fail(1, strf("exception: %s", e.what()));
        gate.fail(2, strf("exception: %s", e.what()));
    }
    try {
        check_box_decay(gate);
    } catch (const std::exception& e) {
        gate.fail(4, strf("exception: %s", e.what()));
        gate.fail(5, strf("exception: %s", e.what()));
        gate.fail(10, strf("exception: %s", e.what()));
    }
    try {
        check_conservation(gate);
    } catch (const std::exception& e) {
        gate.fail(9, strf("exception: %s", e.what()));
    }

    const int failures = gate.report();
    if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
