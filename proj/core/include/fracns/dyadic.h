#ifndef FRACNS_DYADIC_H
#define FRACNS_DYADIC_H

#include "fracns/spectral_field.h"

namespace fracns {

// Smooth radial cutoff: chi = 1 on [0, 3/4], 0 on [4/3, inf), joined by the
// standard exp(-1/x) bridge, so phi(xi) = chi(|xi|/2) - chi(|xi|) is supported
// in the annulus 3/4 <= |xi| <= 8/3 and the dyadic dilates telescope to 1.
double dyadic_chi(double r);
double dyadic_phi(double r);

// Dyadic range covering every nonzero lattice wavenumber of one grid.
class DyadicPartition {
  public:
    explicit DyadicPartition(const Grid& grid);

    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    bool contains(int j) const { return j >= j_min_ && j <= j_max_; }

    // phi(2^{-j} rho) for a wavenumber magnitude rho.
    double phi_at(int j, double rho) const;

  private:
    int j_min_, j_max_;
};

DyadicPartition build_partition(const Grid& grid);

// Frequency block: coefficients multiplied by phi(2^{-j} |xi|), mean zeroed.
SpectralField lp_block(const SpectralField& f, int j, const DyadicPartition& part);

} // namespace fracns

#endif
