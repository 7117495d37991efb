#include "fracns/spectral_field.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "fft_engine.h"
#include "fracns/errors.h"

namespace fracns {

namespace detail {

namespace {

struct PlanSet {
    int n = 0;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr; // r2c
    fftw_plan bwd = nullptr; // c2r

    explicit PlanSet(int n_) : n(n_) {
        real = fftw_alloc_real(static_cast<std::size_t>(n) * n);
        cplx = fftw_alloc_complex(static_cast<std::size_t>(n) * (n / 2 + 1));
        fwd = fftw_plan_dft_r2c_2d(n, n, real, cplx, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_2d(n, n, cplx, real, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(cplx);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(int n) {
    static std::map<int, std::unique_ptr<PlanSet>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<PlanSet>(n)).first;
    return *it->second;
}

} // namespace

void c2r(const Grid& g, const std::complex<double>* in, double* out) {
    PlanSet& p = plans_for(g.n());
    std::memcpy(p.cplx, in, g.spectral_size() * sizeof(fftw_complex));
    fftw_execute(p.bwd);
    std::memcpy(out, p.real, g.physical_size() * sizeof(double));
}

void r2c(const Grid& g, const double* in, std::complex<double>* out) {
    PlanSet& p = plans_for(g.n());
    std::memcpy(p.real, in, g.physical_size() * sizeof(double));
    fftw_execute(p.fwd);
    std::memcpy(out, p.cplx, g.spectral_size() * sizeof(fftw_complex));
}

} // namespace detail

SpectralField::SpectralField(std::shared_ptr<const Grid> grid)
    : grid_(std::move(grid)), coeffs_(grid_->spectral_size()) {}

SpectralField SpectralField::from_physical(std::shared_ptr<const Grid> grid,
                                           const std::vector<double>& values) {
    if (values.size() != grid->physical_size())
        throw GridMismatch("physical sample count does not match the grid");
    SpectralField f(grid);
    detail::r2c(*grid, values.data(), f.coeffs_.data());
    const double scale = 1.0 / (static_cast<double>(grid->n()) * grid->n());
    for (auto& c : f.coeffs_) c *= scale;
    return f;
}

std::vector<double> SpectralField::to_physical() const {
    std::vector<double> out(grid_->physical_size());
    detail::c2r(*grid_, coeffs_.data(), out.data());
    return out;
}

double SpectralField::l2_norm() const {
    double sum = 0.0;
    for_each_mode(*grid_, [&](const ModeRef& m) {
        sum += m.weight * std::norm(coeffs_[m.idx]);
    });
    return grid_->box_len() * std::sqrt(sum);
}

double SpectralField::hermitian_defect() const {
    const int n = grid_->n();
    double worst = 0.0;
    for (int j : {0, n / 2}) {
        for (int i = 0; i < n; ++i) {
            const int p = (n - i) % n;
            const std::complex<double> d = at(i, j) - std::conj(at(p, j));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

void SpectralField::enforce_hermitian() {
    const int n = grid_->n();
    for (int j : {0, n / 2}) {
        for (int i = 0; i <= n / 2; ++i) {
            const int p = (n - i) % n;
            if (p == i) {
                at(i, j) = std::complex<double>(at(i, j).real(), 0.0);
            } else {
                const std::complex<double> v = 0.5 * (at(i, j) + std::conj(at(p, j)));
                at(i, j) = v;
                at(p, j) = std::conj(v);
            }
        }
    }
}

void SpectralField::zero_nyquist() {
    for_each_mode(*grid_, [&](const ModeRef& m) {
        if (std::abs(m.k1) == grid_->n() / 2 || m.k2 == grid_->n() / 2)
            coeffs_[m.idx] = 0.0;
    });
}

void SpectralField::truncate_two_thirds() {
    const int cutoff = grid_->n() / 3;
    for_each_mode(*grid_, [&](const ModeRef& m) {
        if (std::abs(m.k1) > cutoff || m.k2 > cutoff)
            coeffs_[m.idx] = 0.0;
    });
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (grid() != o.grid()) throw GridMismatch("operator+= across grids");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (grid() != o.grid()) throw GridMismatch("operator-= across grids");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double c) {
    for (auto& v : coeffs_) v *= c;
    return *this;
}

double State::min_density() const {
    const std::vector<double> ap = a.to_physical();
    double lo = ap[0];
    for (double v : ap) lo = std::min(lo, v);
    return 1.0 + lo;
}

} // namespace fracns
