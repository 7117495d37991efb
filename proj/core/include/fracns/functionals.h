#ifndef FRACNS_FUNCTIONALS_H
#define FRACNS_FUNCTIONALS_H

#include "fracns/params.h"
#include "fracns/spectral_field.h"

namespace fracns {

// Parameters of the energy functionals.  b is the time-weight exponent
// 2 - 1/beta and doubles as the record of which beta the config was built
// for (beta = 1/(2 - b)).
struct FunctionalConfig {
    double s = 1.5;
    double k = 0.01;
    double c2 = 100.0;
    double b = 0.0;

    static FunctionalConfig for_beta(double beta);
    double beta_from_b() const { return 1.0 / (2.0 - b); }
    void validate() const;
};

// 2k <Lambda^{beta-1} grad a, Lambda^{beta-1} u> in H^{s-2beta+1}: real part of
// the spectral pairing with multiplier (1+|xi|^2)^{s-2beta+1} |xi|^{2(beta-1)}.
double cross_term(const State& state, const FunctionalConfig& cfg, double beta);

// E0 = gamma ||a||_{H^s}^2 + ||u||_{H^s}^2 + cross_term.
double energy_E0(const State& state, const FunctionalConfig& cfg,
                 const PhysParams& params);

// D0 = k gamma ||Lambda^beta a||_{H^{s+1-2beta}}^2 + ||Lambda^beta u||_{H^s}^2.
double dissipation_D0(const State& state, const FunctionalConfig& cfg,
                      const PhysParams& params);

// L^2 energy |a^|^2 + |u^|^2 summed over the shrinking ball
// S1(t) = { |xi|^{2 beta} <= C2 / (1+t) }, k = 0 mode included.
double ball_energy(const State& state, double t, const FunctionalConfig& cfg);

// E~_s = (1+t)^b ||Lambda^s (sqrt(gamma) a, u)||_{L^2}^2
//        + k Re sum |xi|^{2(s-beta)} (i xi a^) . conj(u^).
// Takes the full PhysParams: the leading term carries the gamma weight.
double weighted_Es(const State& state, double t, const FunctionalConfig& cfg,
                   const PhysParams& params);

} // namespace fracns

#endif
