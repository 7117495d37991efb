#include "fracns/initial_data.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fracns/errors.h"

namespace fracns {

namespace {

using cplx = std::complex<double>;

// Uniform in [0, 1) from the generator's raw 64-bit output; identical on
// every platform, unlike the distribution adapters.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> bump_values(const Grid& g, double amplitude, double sigma) {
    const double c = 0.5 * g.box_len();
    const double inv = 1.0 / (2.0 * sigma * sigma);
    std::vector<double> vals(g.physical_size());
    for (int i = 0; i < g.n(); ++i) {
        const double x = i * g.dx();
        for (int j = 0; j < g.n(); ++j) {
            const double y = j * g.dx();
            const double r2 = (x - c) * (x - c) + (y - c) * (y - c);
            vals[static_cast<std::size_t>(i) * g.n() + j] = amplitude * std::exp(-r2 * inv);
        }
    }
    return vals;
}

SpectralField random_band_field(std::shared_ptr<const Grid> grid, double amplitude,
                                std::mt19937_64& rng) {
    const Grid& g = *grid;
    SpectralField f(grid);
    const int band = std::max(1, g.n() / 8);
    for_each_mode(g, [&](const ModeRef& m) {
        const int mag = std::max(std::abs(m.k1), std::abs(m.k2));
        if (mag < 1 || mag > band) return;
        const double re = uniform01(rng) - 0.5;
        const double im = uniform01(rng) - 0.5;
        f.coeffs()[m.idx] = cplx(re, im);
    });
    f.enforce_hermitian();
    f.set_mean(0.0);
    if (amplitude == 0.0) {
        for (auto& c : f.coeffs()) c = 0.0;
        return f;
    }
    const std::vector<double> phys = f.to_physical();
    double sup = 0.0;
    for (double v : phys) sup = std::max(sup, std::abs(v));
    if (sup > 0.0) f *= amplitude / sup;
    return f;
}

} // namespace

InitKind init_kind_from_string(const std::string& name) {
    if (name == "gaussian_bump") return InitKind::GaussianBump;
    if (name == "mean_zero_bump") return InitKind::MeanZeroBump;
    if (name == "incompressible_mode") return InitKind::IncompressibleMode;
    if (name == "random_band") return InitKind::RandomBand;
    throw InvalidConfig("unknown initial-data kind: " + name);
}

std::string to_string(InitKind kind) {
    switch (kind) {
        case InitKind::GaussianBump: return "gaussian_bump";
        case InitKind::MeanZeroBump: return "mean_zero_bump";
        case InitKind::IncompressibleMode: return "incompressible_mode";
        case InitKind::RandomBand: return "random_band";
    }
    return "?";
}

State make_initial(InitKind kind, double amplitude, double sigma,
                   std::shared_ptr<const Grid> grid, std::uint64_t seed) {
    const Grid& g = *grid;
    State state(grid);
    switch (kind) {
        case InitKind::GaussianBump:
        case InitKind::MeanZeroBump: {
            if (!(sigma > 0.0)) throw InvalidConfig("bump width sigma must be positive");
            if (sigma > g.box_len() / 8.0)
                throw SigmaTooLarge("bump width must satisfy sigma <= L/8");
            const std::vector<double> vals = bump_values(g, amplitude, sigma);
            state.a = SpectralField::from_physical(grid, vals);
            state.u1 = state.a;
            state.u2 = state.a;
            if (kind == InitKind::MeanZeroBump) {
                state.a.set_mean(0.0);
                state.u1.set_mean(0.0);
                state.u2.set_mean(0.0);
            }
            break;
        }
        case InitKind::IncompressibleMode: {
            // u = amplitude (0, cos(xi x1)) with xi = (2 pi / L, 0): u . xi = 0,
            // so every nonlinear term vanishes and the mode decays by the pure
            // fractional heat factor.
            state.u2.at(1, 0) = cplx(0.5 * amplitude, 0.0);
            state.u2.at(g.n() - 1, 0) = cplx(0.5 * amplitude, 0.0);
            break;
        }
        case InitKind::RandomBand: {
            std::mt19937_64 rng(seed);
            state.a = random_band_field(grid, amplitude, rng);
            state.u1 = random_band_field(grid, amplitude, rng);
            state.u2 = random_band_field(grid, amplitude, rng);
            break;
        }
    }
    return state;
}

} // namespace fracns
