#include "fracns/solver.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <tuple>

#include "fracns/errors.h"
#include "fracns/modes.h"

namespace fracns {

namespace {

double k_phi(double x, double gamma) {
    return gamma * x / (1.0 + x) +
           gamma * (1.0 - std::pow(1.0 + x, gamma - 1.0)) / (1.0 + x);
}

// Per-mode ETDRK2 coefficients.  Coupled modes carry the (a, u_par) 2x2 block
// and the xi-hat direction; uncoupled modes (k = 0 and Nyquist) use m11 on a
// and perp on both velocity components.
struct ModeCoeffs {
    BlockCoeffs e, p1, p2;
    double e1 = 0.0, e2 = 0.0;
    bool coupled = false;
};

struct CoeffTable {
    std::vector<ModeCoeffs> modes;
};

BlockCoeffs uncoupled_block(PhiKind f, double decay_z) {
    BlockCoeffs b;
    b.m11 = phi_value(f, cplx(0.0, 0.0));
    b.m22 = b.m11;
    b.m12 = b.m21 = 0.0;
    b.perp = phi_value(f, cplx(decay_z, 0.0));
    return b;
}

std::shared_ptr<const CoeffTable> coeff_table(const Grid& g, double dt,
                                              const PhysParams& p) {
    using Key = std::tuple<int, double, double, double, double>;
    static std::map<Key, std::shared_ptr<const CoeffTable>> cache;
    const Key key{g.n(), g.box_len(), dt, p.beta, p.gamma};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 8) cache.clear();

    auto table = std::make_shared<CoeffTable>();
    table->modes.resize(g.spectral_size());
    const int nyq = g.n() / 2;
    for_each_mode(g, [&](const ModeRef& m) {
        ModeCoeffs& mc = table->modes[m.idx];
        const double rho = std::hypot(m.xi1, m.xi2);
        if ((m.k1 == 0 && m.k2 == 0) || std::abs(m.k1) == nyq || m.k2 == nyq) {
            const double z = -std::pow(rho, 2.0 * p.beta) * dt;
            mc.e = uncoupled_block(PhiKind::Exp, z);
            mc.p1 = uncoupled_block(PhiKind::Phi1, z);
            mc.p2 = uncoupled_block(PhiKind::Phi2, z);
            mc.coupled = false;
            return;
        }
        mc.e = mode_block(PhiKind::Exp, rho, dt, p);
        mc.p1 = mode_block(PhiKind::Phi1, rho, dt, p);
        mc.p2 = mode_block(PhiKind::Phi2, rho, dt, p);
        mc.e1 = m.xi1 / rho;
        mc.e2 = m.xi2 / rho;
        mc.coupled = true;
    });
    cache.emplace(key, table);
    return table;
}

struct Triple {
    cplx a, u1, u2;
};

Triple apply_block(const ModeCoeffs& mc, const BlockCoeffs& b, const Triple& v) {
    if (!mc.coupled) return {b.m11 * v.a, b.perp * v.u1, b.perp * v.u2};
    const cplx upar = v.u1 * mc.e1 + v.u2 * mc.e2;
    const cplx uperp = -v.u1 * mc.e2 + v.u2 * mc.e1;
    const cplx a_new = b.m11 * v.a + b.m12 * upar;
    const cplx upar_new = b.m21 * v.a + b.m22 * upar;
    const cplx uperp_new = b.perp * uperp;
    return {a_new, upar_new * mc.e1 - uperp_new * mc.e2,
            upar_new * mc.e2 + uperp_new * mc.e1};
}

// Shared-transform evaluation of the forcing.  Returns sup|u| as a side
// product so step can run its CFL check without extra transforms.
RhsPair rhs_impl(const State& state, const PhysParams& params, bool dealias,
                 double* sup_u) {
    const Grid& g = state.grid();
    const auto grid = state.grid_ptr();

    const State* src = &state;
    State truncated(grid);
    if (dealias) {
        truncated = state;
        truncated.a.truncate_two_thirds();
        truncated.u1.truncate_two_thirds();
        truncated.u2.truncate_two_thirds();
        src = &truncated;
    }

    const std::vector<double> a_phys = src->a.to_physical();
    double min_a = a_phys[0];
    for (double v : a_phys) min_a = std::min(min_a, v);
    if (1.0 + min_a <= kVacuumFloor)
        throw DomainViolation("state too close to vacuum: min(1 + a) <= 0.1");

    const std::vector<double> u1_phys = src->u1.to_physical();
    const std::vector<double> u2_phys = src->u2.to_physical();
    if (sup_u) {
        double m2 = 0.0;
        for (std::size_t i = 0; i < u1_phys.size(); ++i)
            m2 = std::max(m2, u1_phys[i] * u1_phys[i] + u2_phys[i] * u2_phys[i]);
        *sup_u = std::sqrt(m2);
    }

    const auto [ax_f, ay_f] = gradient(src->a);
    const auto [u1x_f, u1y_f] = gradient(src->u1);
    const auto [u2x_f, u2y_f] = gradient(src->u2);
    const std::vector<double> ax = ax_f.to_physical();
    const std::vector<double> ay = ay_f.to_physical();
    const std::vector<double> u1x = u1x_f.to_physical();
    const std::vector<double> u1y = u1y_f.to_physical();
    const std::vector<double> u2x = u2x_f.to_physical();
    const std::vector<double> u2y = u2y_f.to_physical();
    const double two_beta = 2.0 * params.beta;
    const std::vector<double> lu1 = lambda_s(src->u1, two_beta).to_physical();
    const std::vector<double> lu2 = lambda_s(src->u2, two_beta).to_physical();

    const std::size_t np = g.physical_size();
    std::vector<double> h1(np), h2(np), au1(np), au2(np);
    for (std::size_t i = 0; i < np; ++i) {
        const double a = a_phys[i];
        const double ka = k_phi(a, params.gamma);
        const double frac = a / (1.0 + a);
        h1[i] = ka * ax[i] - (u1_phys[i] * u1x[i] + u2_phys[i] * u1y[i]) + frac * lu1[i];
        h2[i] = ka * ay[i] - (u1_phys[i] * u2x[i] + u2_phys[i] * u2y[i]) + frac * lu2[i];
        au1[i] = a * u1_phys[i];
        au2[i] = a * u2_phys[i];
    }

    RhsPair rhs(grid);
    SpectralField f_div = divergence(SpectralField::from_physical(grid, au1),
                                     SpectralField::from_physical(grid, au2));
    f_div *= -1.0;
    rhs.F = std::move(f_div);
    rhs.H.first = SpectralField::from_physical(grid, h1);
    rhs.H.second = SpectralField::from_physical(grid, h2);
    if (dealias) {
        rhs.F.truncate_two_thirds();
        rhs.H.first.truncate_two_thirds();
        rhs.H.second.truncate_two_thirds();
    }
    return rhs;
}

// Precomputed spectral weights for the per-step E0 / D0 accounting; equal to
// energy_E0 / dissipation_D0 without the per-call pow cost.
struct LyapunovMeters {
    double box_sq, gamma, k;
    std::vector<double> hs_w, cross_w, da_w, du_w;
    std::vector<double> xi1, xi2;

    LyapunovMeters(const Grid& g, const FunctionalConfig& cfg, const PhysParams& p) {
        box_sq = g.box_len() * g.box_len();
        gamma = p.gamma;
        k = cfg.k;
        const std::size_t sz = g.spectral_size();
        hs_w.resize(sz);
        cross_w.resize(sz);
        da_w.resize(sz);
        du_w.resize(sz);
        xi1.resize(sz);
        xi2.resize(sz);
        const double beta = p.beta;
        for_each_mode(g, [&](const ModeRef& m) {
            const double r2 = m.xi1 * m.xi1 + m.xi2 * m.xi2;
            xi1[m.idx] = m.xi1;
            xi2[m.idx] = m.xi2;
            hs_w[m.idx] = m.weight * std::pow(1.0 + r2, cfg.s);
            if (r2 == 0.0) {
                cross_w[m.idx] = da_w[m.idx] = du_w[m.idx] = 0.0;
                return;
            }
            cross_w[m.idx] = m.weight * std::pow(1.0 + r2, cfg.s - 2.0 * beta + 1.0) *
                             std::pow(r2, beta - 1.0);
            const double lam = std::pow(r2, beta);
            da_w[m.idx] = m.weight * lam * std::pow(1.0 + r2, cfg.s + 1.0 - 2.0 * beta);
            du_w[m.idx] = m.weight * lam * std::pow(1.0 + r2, cfg.s);
        });
    }

    double e0(const State& s) const {
        double quad = 0.0;
        double cross = 0.0;
        const auto& a = s.a.coeffs();
        const auto& u1 = s.u1.coeffs();
        const auto& u2 = s.u2.coeffs();
        for (std::size_t i = 0; i < hs_w.size(); ++i) {
            quad += hs_w[i] * (gamma * std::norm(a[i]) + std::norm(u1[i]) + std::norm(u2[i]));
            const cplx grad_dot = cplx(0.0, xi1[i]) * a[i] * std::conj(u1[i]) +
                                  cplx(0.0, xi2[i]) * a[i] * std::conj(u2[i]);
            cross += cross_w[i] * grad_dot.real();
        }
        return box_sq * (quad + 2.0 * k * cross);
    }

    double d0(const State& s) const {
        double acc_a = 0.0;
        double acc_u = 0.0;
        const auto& a = s.a.coeffs();
        const auto& u1 = s.u1.coeffs();
        const auto& u2 = s.u2.coeffs();
        for (std::size_t i = 0; i < hs_w.size(); ++i) {
            acc_a += da_w[i] * std::norm(a[i]);
            acc_u += du_w[i] * (std::norm(u1[i]) + std::norm(u2[i]));
        }
        return box_sq * (k * gamma * acc_a + acc_u);
    }
};

} // namespace

void SolverConfig::validate() const {
    params.validate();
    functionals.validate();
    if (!(dt > 0.0)) throw InvalidConfig("SolverConfig: dt must be positive");
    if (!(t_end >= 0.0)) throw InvalidConfig("SolverConfig: t_end must be nonnegative");
    if (!(cfl_limit > 0.0 && cfl_limit <= 1.0))
        throw InvalidConfig("SolverConfig: cfl_limit must lie in (0, 1]");
    if (record_every < 1) throw InvalidConfig("SolverConfig: record_every must be >= 1");
}

SpectralField k_of_a(const SpectralField& a, double gamma) {
    std::vector<double> phys = a.to_physical();
    double min_a = phys[0];
    for (double v : phys) min_a = std::min(min_a, v);
    if (1.0 + min_a <= 0.0)
        throw DomainViolation("K(a) undefined: 1 + a <= 0 on the grid");
    return pointwise_map(a, [gamma](double x) { return k_phi(x, gamma); });
}

RhsPair nonlinear_rhs(const State& state, const PhysParams& params, bool dealias) {
    params.validate();
    return rhs_impl(state, params, dealias, nullptr);
}

State step(const State& state, double dt, const SolverConfig& cfg) {
    cfg.validate();
    if (!(dt > 0.0)) throw InvalidConfig("step: dt must be positive");
    const Grid& g = state.grid();
    const auto table = coeff_table(g, dt, cfg.params);

    double sup_u = 0.0;
    RhsPair n0(state.grid_ptr());
    if (cfg.linear_only) {
        const std::vector<double> u1p = state.u1.to_physical();
        const std::vector<double> u2p = state.u2.to_physical();
        double m2 = 0.0;
        for (std::size_t i = 0; i < u1p.size(); ++i)
            m2 = std::max(m2, u1p[i] * u1p[i] + u2p[i] * u2p[i]);
        sup_u = std::sqrt(m2);
    } else {
        n0 = rhs_impl(state, cfg.params, cfg.dealias, &sup_u);
    }
    if (dt > cfg.cfl_limit * g.dx() / std::max(1e-12, sup_u))
        throw CflViolation("advective CFL exceeded: reduce dt or the velocity");

    State stage(state.grid_ptr());
    for (std::size_t i = 0; i < table->modes.size(); ++i) {
        const ModeCoeffs& mc = table->modes[i];
        const Triple v{state.a.coeffs()[i], state.u1.coeffs()[i], state.u2.coeffs()[i]};
        Triple out = apply_block(mc, mc.e, v);
        if (!cfg.linear_only) {
            const Triple f{n0.F.coeffs()[i], n0.H.first.coeffs()[i], n0.H.second.coeffs()[i]};
            const Triple fw = apply_block(mc, mc.p1, f);
            out.a += dt * fw.a;
            out.u1 += dt * fw.u1;
            out.u2 += dt * fw.u2;
        }
        stage.a.coeffs()[i] = out.a;
        stage.u1.coeffs()[i] = out.u1;
        stage.u2.coeffs()[i] = out.u2;
    }
    if (cfg.linear_only) return stage;

    RhsPair n1 = rhs_impl(stage, cfg.params, cfg.dealias, nullptr);
    State next = stage;
    for (std::size_t i = 0; i < table->modes.size(); ++i) {
        const ModeCoeffs& mc = table->modes[i];
        const Triple df{n1.F.coeffs()[i] - n0.F.coeffs()[i],
                        n1.H.first.coeffs()[i] - n0.H.first.coeffs()[i],
                        n1.H.second.coeffs()[i] - n0.H.second.coeffs()[i]};
        const Triple fw = apply_block(mc, mc.p2, df);
        next.a.coeffs()[i] += dt * fw.a;
        next.u1.coeffs()[i] += dt * fw.u1;
        next.u2.coeffs()[i] += dt * fw.u2;
    }
    if (cfg.dealias) {
        next.a.truncate_two_thirds();
        next.u1.truncate_two_thirds();
        next.u2.truncate_two_thirds();
    }
    return next;
}

NormTrajectory simulate(const State& state0, const SolverConfig& cfg,
                        const Recorder& recorder) {
    cfg.validate();
    NormTrajectory traj;
    State cur = state0;
    if (cfg.dealias) {
        cur.a.truncate_two_thirds();
        cur.u1.truncate_two_thirds();
        cur.u2.truncate_two_thirds();
    }

    const LyapunovMeters meters(cur.grid(), cfg.functionals, cfg.params);
    double e0_prev = meters.e0(cur);
    double d0_prev = meters.d0(cur);
    traj.lyapunov_filled = true;
    traj.e0_initial = e0_prev;
    traj.e0_final = e0_prev;

    if (recorder) recorder(cur, 0.0, traj);

    const long n_steps =
        (cfg.t_end <= 0.0) ? 0 : static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    double t = 0.0;
    for (long k = 1; k <= n_steps; ++k) {
        const double t_next = (k == n_steps) ? cfg.t_end : k * cfg.dt;
        const double dt_k = t_next - t;
        if (dt_k <= 0.0) break;
        try {
            cur = step(cur, dt_k, cfg);
        } catch (const DomainViolation& e) {
            traj.early_termination = true;
            traj.termination_reason = e.what();
            break;
        } catch (const CflViolation& e) {
            traj.early_termination = true;
            traj.termination_reason = e.what();
            break;
        }
        t = t_next;
        const double e0_new = meters.e0(cur);
        const double d0_new = meters.d0(cur);
        traj.d0_time_integral += 0.5 * (d0_prev + d0_new) * dt_k;
        traj.e0_max_uptick = std::max(traj.e0_max_uptick, e0_new - e0_prev);
        e0_prev = e0_new;
        d0_prev = d0_new;
        traj.e0_final = e0_new;
        if (recorder && (k % cfg.record_every == 0 || k == n_steps))
            recorder(cur, t, traj);
    }
    if (traj.early_termination && recorder &&
        (traj.times.empty() || traj.times.back() < t))
        recorder(cur, t, traj);  // last good state, flagged by the caller via the fields
    return traj;
}

} // namespace fracns
