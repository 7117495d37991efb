#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "fracns/errors.h"
#include "fracns/initial_data.h"
#include "fracns/modes.h"
#include "fracns/operators.h"
#include "fracns/solver.h"
#include "oracles.h"

using namespace fracns;

namespace {

SolverConfig small_config(double beta, double gamma, double dt, double t_end) {
    SolverConfig cfg;
    cfg.params.beta = beta;
    cfg.params.gamma = gamma;
    cfg.dt = dt;
    cfg.t_end = t_end;
    return cfg;
}

State random_small_state(std::shared_ptr<const Grid> g, std::uint64_t seed,
                         double amplitude) {
    State st(g);
    st.a = oracles::random_mean_zero_field(g, seed, amplitude);
    st.u1 = oracles::random_mean_zero_field(g, seed + 1, amplitude);
    st.u2 = oracles::random_mean_zero_field(g, seed + 2, amplitude);
    return st;
}

double state_gap(State a, const State& b) {
    a.a -= b.a;
    a.u1 -= b.u1;
    a.u2 -= b.u2;
    return a.a.l2_norm() + a.u1.l2_norm() + a.u2.l2_norm();
}

double sup_physical(const SpectralField& f) {
    double sup = 0.0;
    for (double v : f.to_physical()) sup = std::max(sup, std::abs(v));
    return sup;
}

}  // namespace

TEST_CASE("pressure nonlinearity") {
    auto g = std::make_shared<const Grid>(32, 10.0);

    SpectralField zero(g);
    CHECK(k_of_a(zero, 1.4).l2_norm() == 0.0);

    // gamma = 2: the two terms cancel identically.
    SpectralField a = oracles::random_mean_zero_field(g, 3, 0.2);
    CHECK(sup_physical(k_of_a(a, 2.0)) <= 1e-14);

    // gamma = 3 collapses to K(a) = -3a.
    SpectralField k3 = k_of_a(a, 3.0);
    k3 += a;
    k3 += a;
    k3 += a;
    CHECK(k3.l2_norm() <= 1e-12 * a.l2_norm());

    // gamma = 1, a = 1: K = 1/2 pointwise.
    SpectralField one(g);
    one.set_mean(cplx(1.0, 0.0));
    SpectralField half = k_of_a(one, 1.0);
    CHECK(std::abs(half.mean().real() - 0.5) <= 1e-14);
    CHECK(lambda_s(half, 1.0).l2_norm() <= 1e-13);

    // k_of_a itself only needs 1 + a > 0; the stricter solver floor lives in
    // the rhs (tested below).
    SpectralField vacuum(g);
    vacuum.set_mean(cplx(-1.5, 0.0));
    CHECK_THROWS_AS(k_of_a(vacuum, 1.4), DomainViolation);
}

TEST_CASE("rhs trivial cases") {
    auto g = std::make_shared<const Grid>(32, 10.0);
    const PhysParams p = small_config(0.6, 1.5, 0.1, 1.0).params;

    RhsPair quiet = nonlinear_rhs(State(g), p);
    CHECK(quiet.F.l2_norm() == 0.0);
    CHECK(quiet.H.first.l2_norm() == 0.0);
    CHECK(quiet.H.second.l2_norm() == 0.0);

    // u = 0: F vanishes and H reduces to K(a) grad a, assembled on the
    // physical grid from the dealiased density.
    State st(g);
    st.a = oracles::random_mean_zero_field(g, 5, 0.05);
    RhsPair rhs = nonlinear_rhs(st, p);
    CHECK(rhs.F.l2_norm() == 0.0);

    SpectralField a_t = st.a;
    a_t.truncate_two_thirds();
    std::vector<double> a_phys = a_t.to_physical();
    auto grad = gradient(a_t);
    std::vector<double> ax = grad.first.to_physical();
    std::vector<double> ay = grad.second.to_physical();
    for (std::size_t i = 0; i < a_phys.size(); ++i) {
        const double x = a_phys[i];
        const double k = p.gamma * x / (1.0 + x) +
                         p.gamma * (1.0 - std::pow(1.0 + x, p.gamma - 1.0)) / (1.0 + x);
        ax[i] *= k;
        ay[i] *= k;
    }
    SpectralField h1 = SpectralField::from_physical(g, ax);
    SpectralField h2 = SpectralField::from_physical(g, ay);
    h1.truncate_two_thirds();
    h2.truncate_two_thirds();
    h1 -= rhs.H.first;
    h2 -= rhs.H.second;
    const double scale = rhs.H.first.l2_norm() + rhs.H.second.l2_norm();
    CHECK(h1.l2_norm() + h2.l2_norm() <= 1e-13 * std::max(1e-30, scale));

    // gamma = 2 with u = 0: the entire forcing vanishes.
    RhsPair flat = nonlinear_rhs(st, small_config(0.6, 2.0, 0.1, 1.0).params);
    CHECK(flat.F.l2_norm() == 0.0);
    CHECK(flat.H.first.l2_norm() <= 1e-13);
    CHECK(flat.H.second.l2_norm() <= 1e-13);

    // F is a pure divergence: zero mean for arbitrary states.
    State moving = random_small_state(g, 7, 0.05);
    CHECK(std::abs(nonlinear_rhs(moving, p).F.mean()) == 0.0);
}

TEST_CASE("rhs vacuum guard") {
    auto g = std::make_shared<const Grid>(32, 10.0);
    State st(g);
    st.a.set_mean(cplx(-0.95, 0.0));
    CHECK_THROWS_AS(nonlinear_rhs(st, PhysParams{}), DomainViolation);
}

TEST_CASE("solver config validation") {
    SolverConfig cfg = small_config(0.5, 1.0, 0.1, 1.0);
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config(0.5, 1.0, 0.1, 1.0);
    cfg.cfl_limit = 1.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config(0.3, 1.0, 0.1, 1.0);
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);  // beta out of range
}

TEST_CASE("linear-only stepping matches the exact propagator") {
    auto g = std::make_shared<const Grid>(48, 14.0);
    SolverConfig cfg = small_config(0.7, 1.8, 0.3, 1.0);
    cfg.linear_only = true;

    State st = random_small_state(g, 11, 0.1);
    State stepped = step(st, cfg.dt, cfg);
    State exact = evolve_linear(st, cfg.dt, cfg.params);
    CHECK(state_gap(stepped, exact) == 0.0);

    State multi = st;
    for (int k = 0; k < 5; ++k) multi = step(multi, cfg.dt, cfg);
    State whole = evolve_linear(st, 5 * cfg.dt, cfg.params);
    const double scale = whole.a.l2_norm() + whole.u1.l2_norm() + whole.u2.l2_norm();
    CHECK(state_gap(multi, whole) <= 1e-10 * scale);
}

TEST_CASE("incompressible single mode is an exact nonlinear solution") {
    auto g = std::make_shared<const Grid>(64, 2.0 * M_PI);
    const double amplitude = 0.01;
    State st = make_initial(InitKind::IncompressibleMode, amplitude, 1.0, g, 0);
    SolverConfig cfg = small_config(0.5, 1.0, 0.05, 5.0);

    State cur = st;
    for (int k = 0; k < 100; ++k) cur = step(cur, cfg.dt, cfg);

    // |xi| = 1, so the factor is e^{-t} regardless of beta.
    const double want = 0.5 * amplitude * std::exp(-5.0);
    const cplx got = cur.u2.at(1, 0);
    CHECK(std::abs(got - cplx(want, 0.0)) <= 1e-10 * want);
    CHECK(cur.a.l2_norm() == 0.0);
    CHECK(cur.u1.l2_norm() == 0.0);
}

TEST_CASE("second-order self convergence") {
    auto g = std::make_shared<const Grid>(32, 20.0);
    State st = make_initial(InitKind::MeanZeroBump, 5e-3, 2.5, g, 0);

    auto advance = [&](double dt) {
        SolverConfig cfg = small_config(0.6, 1.4, dt, 1.0);
        State cur = st;
        const int n_steps = static_cast<int>(std::lround(1.0 / dt));
        for (int k = 0; k < n_steps; ++k) cur = step(cur, dt, cfg);
        return cur;
    };
    State coarse = advance(0.1);
    State mid = advance(0.05);
    State fine = advance(0.025);
    const double e1 = state_gap(coarse, mid);
    const double e2 = state_gap(mid, fine);
    CHECK(e1 / e2 >= 3.6);
    CHECK(e1 / e2 <= 4.4);
}

TEST_CASE("step guards") {
    auto g = std::make_shared<const Grid>(32, 10.0);
    SolverConfig cfg = small_config(0.5, 1.0, 0.25, 1.0);

    State fast(g);
    fast.u1.set_mean(cplx(10.0, 0.0));
    CHECK_THROWS_AS(step(fast, cfg.dt, cfg), CflViolation);

    State vacuum(g);
    vacuum.a.set_mean(cplx(-0.95, 0.0));
    CHECK_THROWS_AS(step(vacuum, cfg.dt, cfg), DomainViolation);
}

TEST_CASE("step preserves the density mean") {
    auto g = std::make_shared<const Grid>(48, 25.0);
    State st = make_initial(InitKind::GaussianBump, 8e-3, 2.0, g, 0);
    SolverConfig cfg = small_config(0.55, 1.3, 0.2, 1.0);
    const double mean0 = st.a.mean().real();
    REQUIRE(mean0 > 0.0);
    State cur = st;
    for (int k = 0; k < 25; ++k) cur = step(cur, cfg.dt, cfg);
    CHECK(std::abs(cur.a.mean().real() - mean0) <= 1e-12 * mean0);
}

TEST_CASE("simulate records, conserves, and dissipates") {
    auto g = std::make_shared<const Grid>(48, 25.0);
    State st = make_initial(InitKind::MeanZeroBump, 1e-2, 2.0, g, 0);
    SolverConfig cfg = small_config(0.5, 1.0, 0.2, 4.0);
    cfg.record_every = 5;
    cfg.functionals = FunctionalConfig::for_beta(cfg.params.beta);

    std::vector<double> defects;
    std::vector<double> min_density;
    Recorder rec = [&](const State& s, double t, NormTrajectory& traj) {
        defects.push_back(std::max({s.a.hermitian_defect(), s.u1.hermitian_defect(),
                                    s.u2.hermitian_defect()}));
        min_density.push_back(s.min_density());
        traj.append(t, {{"l2_a", s.a.l2_norm()}});
    };
    NormTrajectory traj = simulate(st, cfg, rec);

    CHECK(traj.size() == 5);  // t = 0, 1, 2, 3, 4
    CHECK_FALSE(traj.early_termination);
    CHECK(traj.lyapunov_filled);
    CHECK(traj.e0_initial > 0.0);
    CHECK(traj.e0_max_uptick <= 1e-10 * traj.e0_initial);
    CHECK(traj.d0_time_integral <= 1.05 * traj.e0_initial);
    CHECK(traj.e0_final <= traj.e0_initial);
    for (double d : defects) CHECK(d <= 1e-13);
    for (double m : min_density) CHECK(m > 0.9);
}

TEST_CASE("simulate on zero data stays zero") {
    auto g = std::make_shared<const Grid>(32, 10.0);
    SolverConfig cfg = small_config(0.5, 1.0, 0.25, 2.0);
    cfg.record_every = 2;
    NormTrajectory traj = simulate(State(g), cfg, {});
    CHECK(traj.size() == 0);  // no recorder: only the lyapunov block is filled
    CHECK(traj.e0_initial == 0.0);
    CHECK(traj.d0_time_integral == 0.0);
}

TEST_CASE("simulate flags early termination") {
    auto g = std::make_shared<const Grid>(32, 10.0);
    State st(g);
    st.a.set_mean(cplx(-0.95, 0.0));  // inadmissible from the start
    SolverConfig cfg = small_config(0.5, 1.0, 0.25, 2.0);
    NormTrajectory traj = simulate(st, cfg, {});
    CHECK(traj.early_termination);
    CHECK_FALSE(traj.termination_reason.empty());
}

TEST_CASE("mass conservation over a full run") {
    auto g = std::make_shared<const Grid>(48, 25.0);
    State st = make_initial(InitKind::GaussianBump, 1e-2, 2.0, g, 0);
    SolverConfig cfg = small_config(0.5, 1.2, 0.2, 10.0);
    const double mean0 = st.a.mean().real();
    NormTrajectory traj = simulate(st, cfg, {});
    CHECK_FALSE(traj.early_termination);
    // The k = 0 coefficient is untouched by construction; simulate's final
    // state is not exposed, so re-run the steps directly.
    State cur = st;
    for (int k = 0; k < 50; ++k) cur = step(cur, cfg.dt, cfg);
    CHECK(std::abs(cur.a.mean().real() - mean0) <= 1e-12 * std::abs(mean0));
}
