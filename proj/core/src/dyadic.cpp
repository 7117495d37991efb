#include "fracns/dyadic.h"

#include <cmath>

#include "fracns/errors.h"

namespace fracns {

namespace {

// h(x) = exp(-1/x) for x > 0, else 0: the C^inf bridge kernel.
inline double bridge_h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// g(x) = h(x) / (h(x) + h(1-x)): 0 at x <= 0, 1 at x >= 1, smooth between.
inline double bridge_g(double x) {
    const double a = bridge_h(x);
    const double b = bridge_h(1.0 - x);
    return a + b > 0.0 ? a / (a + b) : 0.0;
}

} // namespace

double dyadic_chi(double r) {
    constexpr double lo = 0.75;
    constexpr double hi = 4.0 / 3.0;
    if (r <= lo) return 1.0;
    if (r >= hi) return 0.0;
    return bridge_g((hi - r) / (hi - lo));
}

double dyadic_phi(double r) { return dyadic_chi(r / 2.0) - dyadic_chi(r); }

DyadicPartition::DyadicPartition(const Grid& grid)
    : j_min_(static_cast<int>(std::floor(std::log2(3.0 * grid.xi_min() / 8.0)))),
      j_max_(static_cast<int>(std::ceil(std::log2(4.0 * grid.xi_max() / 3.0)))) {}

double DyadicPartition::phi_at(int j, double rho) const {
    return dyadic_phi(std::ldexp(rho, -j));
}

DyadicPartition build_partition(const Grid& grid) { return DyadicPartition(grid); }

SpectralField lp_block(const SpectralField& f, int j, const DyadicPartition& part) {
    if (!part.contains(j)) throw JOutOfRange("dyadic block index outside the partition");
    SpectralField out(f.grid_ptr());
    for_each_mode(f.grid(), [&](const ModeRef& m) {
        if (m.k1 == 0 && m.k2 == 0) return;
        const double rho = std::hypot(m.xi1, m.xi2);
        out.coeffs()[m.idx] = f.coeffs()[m.idx] * part.phi_at(j, rho);
    });
    return out;
}

} // namespace fracns
