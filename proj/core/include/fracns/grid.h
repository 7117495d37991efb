#ifndef FRACNS_GRID_H
#define FRACNS_GRID_H

#include <cmath>
#include <cstddef>

#include "fracns/errors.h"

namespace fracns {

// Periodic square grid [0, L)^2 with n points per dimension.  Spectral
// storage is the real-transform half lattice: indices (i, j) with
// i in [0, n) and j in [0, n/2], integer wavenumbers k = i (i <= n/2)
// or i - n (i > n/2), and physical wavenumbers xi = 2*pi*k / L.
class Grid {
  public:
    Grid(int n, double box_len) : n_(n), box_len_(box_len) {
        if (n < 4 || n % 2 != 0)
            throw InvalidConfig("grid resolution must be even and >= 4");
        if (!(box_len > 0.0))
            throw InvalidConfig("box length must be positive");
    }

    int n() const { return n_; }
    double box_len() const { return box_len_; }
    double dx() const { return box_len_ / n_; }
    double cell_area() const { return dx() * dx(); }

    int half() const { return n_ / 2 + 1; }           // stored columns
    std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * half(); }
    std::size_t physical_size() const { return static_cast<std::size_t>(n_) * n_; }

    // Signed integer wavenumber for a row index; the Nyquist index n/2 maps
    // to the positive +n/2 representative.
    int wavenumber(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }

    double xi_step() const { return 2.0 * M_PI / box_len_; }
    double xi(int k) const { return xi_step() * k; }

    // Smallest nonzero and largest lattice wavenumber magnitudes.
    double xi_min() const { return xi_step(); }
    double xi_max() const { return xi_step() * std::sqrt(2.0) * (n_ / 2); }

    bool operator==(const Grid& o) const { return n_ == o.n_ && box_len_ == o.box_len_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

  private:
    int n_;
    double box_len_;
};

} // namespace fracns

#endif
