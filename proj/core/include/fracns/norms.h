#ifndef FRACNS_NORMS_H
#define FRACNS_NORMS_H

#include <limits>

#include "fracns/dyadic.h"
#include "fracns/spectral_field.h"

namespace fracns {

// A norm to evaluate.  Factory helpers fix the parameter conventions:
// Lp uses p in [2, inf]; Besov uses r in {1, 2, inf} (inf encoded as
// infinity()) and any real s.
struct NormRequest {
    enum class Kind { L2, Lp, Hs, HomHs, Besov };

    Kind kind = Kind::L2;
    double p = 2.0;
    double s = 0.0;
    double r = 2.0;

    static NormRequest l2() { return {}; }
    static NormRequest lp(double p);
    static NormRequest hs(double s);
    static NormRequest hom_hs(double s);
    static NormRequest besov(double s, double r);

    static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }
};

// Evaluates one norm.  Spectral sums for L2 / Hs / HomHs / Besov blocks,
// physical-grid quadrature for Lp with p > 2.  Homogeneous norms of
// nonnegative order ignore the mean; with s <= 0 they require a mean-zero
// field (MeanModeNotZero otherwise).
double norm(const SpectralField& f, const NormRequest& req, const DyadicPartition& part);
double norm(const SpectralField& f, const NormRequest& req);

// Besov norm of the (a, u) triple: blockwise l2 over components.
double besov_vector(const State& s, double order, double r, const DyadicPartition& part);

// Interpolation exponent theta from s + 1 - 2/p = (1-theta) s1 + theta s2
// (two space dimensions).  Throws NoAdmissibleTheta outside [0, 1].
double gn_exponent(double s, double s1, double s2, double p);

// Measured ratio ||Lambda^s f||_{L^p} / (||Lambda^{s1} f||^{1-theta}
// ||Lambda^{s2} f||^theta); bounded over ensembles by the interpolation
// inequality.  Throws ZeroField for f = 0.
double gn_ratio(const SpectralField& f, double s, double s1, double s2, double p);

} // namespace fracns

#endif
