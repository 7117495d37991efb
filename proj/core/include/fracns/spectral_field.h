#ifndef FRACNS_SPECTRAL_FIELD_H
#define FRACNS_SPECTRAL_FIELD_H

#include <complex>
#include <memory>
#include <vector>

#include "fracns/grid.h"

namespace fracns {

// One stored mode of the half lattice.  weight is the multiplicity of the
// mode in full-lattice sums: columns j = 0 and j = n/2 store both Hermitian
// partners, every other column stores one of the two.
struct ModeRef {
    std::size_t idx;
    int i, j;        // storage indices
    int k1, k2;      // integer wavenumbers
    double xi1, xi2; // physical wavenumbers
    double weight;
};

// Visits every stored mode in a fixed deterministic order.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
    const int n = g.n();
    const int h = g.half();
    const double step = g.xi_step();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < h; ++j, ++idx) {
            ModeRef m;
            m.idx = idx;
            m.i = i;
            m.j = j;
            m.k1 = k1;
            m.k2 = j;
            m.xi1 = step * k1;
            m.xi2 = step * j;
            m.weight = (j == 0 || j == n / 2) ? 1.0 : 2.0;
            f(m);
        }
    }
}

// Real scalar field stored as Hermitian-symmetric Fourier coefficients c_k
// with f(x) = sum_k c_k exp(i xi_k . x).  Plancherel is exact:
// ||f||_{L^2}^2 = L^2 sum_k |c_k|^2 over the full lattice.
class SpectralField {
  public:
    explicit SpectralField(std::shared_ptr<const Grid> grid);

    static SpectralField from_physical(std::shared_ptr<const Grid> grid,
                                       const std::vector<double>& values);
    std::vector<double> to_physical() const;

    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }

    std::complex<double>& at(int i, int j) { return coeffs_[static_cast<std::size_t>(i) * grid_->half() + j]; }
    const std::complex<double>& at(int i, int j) const { return coeffs_[static_cast<std::size_t>(i) * grid_->half() + j]; }

    std::vector<std::complex<double>>& coeffs() { return coeffs_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    std::complex<double> mean() const { return coeffs_[0]; }
    void set_mean(std::complex<double> v) { coeffs_[0] = v; }

    // L^2 norm by the exact Plancherel identity.
    double l2_norm() const;

    // Largest violation of c(-k) = conj(c(k)) over the stored redundancy
    // (columns j = 0 and j = n/2; zero for a consistent field).
    double hermitian_defect() const;
    void enforce_hermitian();

    // Zeroes every mode with a Nyquist component (|k_i| = n/2).
    void zero_nyquist();

    // Zeroes every mode with max(|k_1|, |k_2|) > n/3 (the 2/3 rule band).
    void truncate_two_thirds();

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double c);

  private:
    std::shared_ptr<const Grid> grid_;
    std::vector<std::complex<double>> coeffs_;
};

// The (a, u1, u2) triple at one time; all fields share one grid.
struct State {
    SpectralField a, u1, u2;

    explicit State(std::shared_ptr<const Grid> grid) : a(grid), u1(grid), u2(grid) {}

    const Grid& grid() const { return a.grid(); }
    const std::shared_ptr<const Grid>& grid_ptr() const { return a.grid_ptr(); }

    // min over the physical grid of 1 + a; admissibility requires > 0.
    double min_density() const;
};

} // namespace fracns

#endif
