#include "fracns/functionals.h"

#include <cmath>
#include <complex>

#include "fracns/errors.h"

namespace fracns {

namespace {

// Sum w (1+|xi|^2)^s |coeff|^2 over the half spectrum; L^2 factor applied by
// callers.  k = 0 contributes with weight 1.
double hs_sq_sum(const SpectralField& f, double s) {
    double acc = 0.0;
    for_each_mode(f.grid(), [&](const ModeRef& m) {
        const double r2 = m.xi1 * m.xi1 + m.xi2 * m.xi2;
        acc += m.weight * std::pow(1.0 + r2, s) * std::norm(f.coeffs()[m.idx]);
    });
    return acc;
}

// Odd factor i xi of the cross pairings, under the derivative convention:
// zero at the Nyquist frequency, where the sign of xi is arbitrary.  With
// this mask the weighted half-spectrum sum equals the full-lattice pairing
// of a real field; the unmasked value would depend on the sign choice.
double odd_xi(int k, int n, double xi) { return std::abs(k) == n / 2 ? 0.0 : xi; }

} // namespace

FunctionalConfig FunctionalConfig::for_beta(double beta) {
    FunctionalConfig cfg;
    cfg.b = 2.0 - 1.0 / beta;
    cfg.validate();
    return cfg;
}

void FunctionalConfig::validate() const {
    if (!(s > 1.0)) throw InvalidConfig("FunctionalConfig: s must exceed 1");
    if (!(k > 0.0)) throw InvalidConfig("FunctionalConfig: k must be positive");
    if (!(c2 > 0.0)) throw InvalidConfig("FunctionalConfig: C2 must be positive");
    if (!(b >= 0.0 && b < 1.0)) throw InvalidConfig("FunctionalConfig: b must lie in [0, 1)");
}

double cross_term(const State& state, const FunctionalConfig& cfg, double beta) {
    const Grid& grid = state.a.grid();
    const double box_sq = grid.box_len() * grid.box_len();
    const double order = cfg.s - 2.0 * beta + 1.0;
    double acc = 0.0;
    for_each_mode(grid, [&](const ModeRef& m) {
        const double r2 = m.xi1 * m.xi1 + m.xi2 * m.xi2;
        if (r2 == 0.0) return;
        const std::complex<double> a = state.a.coeffs()[m.idx];
        const int n = grid.n();
        const std::complex<double> grad_dot =
            std::complex<double>(0.0, odd_xi(m.k1, n, m.xi1)) * a *
                std::conj(state.u1.coeffs()[m.idx]) +
            std::complex<double>(0.0, odd_xi(m.k2, n, m.xi2)) * a *
                std::conj(state.u2.coeffs()[m.idx]);
        const double mult = std::pow(1.0 + r2, order) * std::pow(r2, beta - 1.0);
        acc += m.weight * mult * grad_dot.real();
    });
    return 2.0 * cfg.k * box_sq * acc;
}

double energy_E0(const State& state, const FunctionalConfig& cfg,
                 const PhysParams& params) {
    const double box_sq = state.a.grid().box_len() * state.a.grid().box_len();
    const double quad = params.gamma * hs_sq_sum(state.a, cfg.s) +
                        hs_sq_sum(state.u1, cfg.s) + hs_sq_sum(state.u2, cfg.s);
    return box_sq * quad + cross_term(state, cfg, params.beta);
}

double dissipation_D0(const State& state, const FunctionalConfig& cfg,
                      const PhysParams& params) {
    const Grid& grid = state.a.grid();
    const double box_sq = grid.box_len() * grid.box_len();
    const double beta = params.beta;
    double acc_a = 0.0;
    double acc_u = 0.0;
    for_each_mode(grid, [&](const ModeRef& m) {
        const double r2 = m.xi1 * m.xi1 + m.xi2 * m.xi2;
        if (r2 == 0.0) return;
        const double lam = std::pow(r2, beta);
        acc_a += m.weight * lam * std::pow(1.0 + r2, cfg.s + 1.0 - 2.0 * beta) *
                 std::norm(state.a.coeffs()[m.idx]);
        acc_u += m.weight * lam * std::pow(1.0 + r2, cfg.s) *
                 (std::norm(state.u1.coeffs()[m.idx]) + std::norm(state.u2.coeffs()[m.idx]));
    });
    return box_sq * (cfg.k * params.gamma * acc_a + acc_u);
}

double ball_energy(const State& state, double t, const FunctionalConfig& cfg) {
    if (t < 0.0) throw NegativeTime("ball_energy: t must be nonnegative");
    const Grid& grid = state.a.grid();
    const double box_sq = grid.box_len() * grid.box_len();
    const double two_beta = 2.0 * cfg.beta_from_b();
    const double threshold = cfg.c2 / (1.0 + t);
    double acc = 0.0;
    for_each_mode(grid, [&](const ModeRef& m) {
        const double rho = std::hypot(m.xi1, m.xi2);
        if (std::pow(rho, two_beta) > threshold) return;
        acc += m.weight * (std::norm(state.a.coeffs()[m.idx]) +
                           std::norm(state.u1.coeffs()[m.idx]) +
                           std::norm(state.u2.coeffs()[m.idx]));
    });
    return box_sq * acc;
}

double weighted_Es(const State& state, double t, const FunctionalConfig& cfg,
                   const PhysParams& params) {
    if (t < 0.0) throw NegativeTime("weighted_Es: t must be nonnegative");
    const Grid& grid = state.a.grid();
    const double box_sq = grid.box_len() * grid.box_len();
    const double beta = params.beta;
    double main = 0.0;
    double cross = 0.0;
    for_each_mode(grid, [&](const ModeRef& m) {
        const double r2 = m.xi1 * m.xi1 + m.xi2 * m.xi2;
        if (r2 == 0.0) return;
        const std::complex<double> a = state.a.coeffs()[m.idx];
        const std::complex<double> u1 = state.u1.coeffs()[m.idx];
        const std::complex<double> u2 = state.u2.coeffs()[m.idx];
        main += m.weight * std::pow(r2, cfg.s) *
                (params.gamma * std::norm(a) + std::norm(u1) + std::norm(u2));
        const int n = grid.n();
        const std::complex<double> grad_dot =
            std::complex<double>(0.0, odd_xi(m.k1, n, m.xi1)) * a * std::conj(u1) +
            std::complex<double>(0.0, odd_xi(m.k2, n, m.xi2)) * a * std::conj(u2);
        cross += m.weight * std::pow(r2, cfg.s - beta) * grad_dot.real();
    });
    return std::pow(1.0 + t, cfg.b) * box_sq * main + cfg.k * box_sq * cross;
}

} // namespace fracns
