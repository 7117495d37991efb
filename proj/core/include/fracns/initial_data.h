#ifndef FRACNS_INITIAL_DATA_H
#define FRACNS_INITIAL_DATA_H

#include <cstdint>
#include <memory>
#include <string>

#include "fracns/spectral_field.h"

namespace fracns {

enum class InitKind {
    GaussianBump,       // a0 and both u0 components: amplitude e^{-|x-c|^2/(2 sigma^2)}
    MeanZeroBump,       // the same with the k = 0 coefficient removed
    IncompressibleMode, // a0 = 0, u0 = amplitude (0, cos(2 pi x1 / L)); exact solution datum
    RandomBand,         // seeded random band-limited data, sup norm = amplitude
};

InitKind init_kind_from_string(const std::string& name);
std::string to_string(InitKind kind);

// Builds the initial state.  Bump kinds require sigma <= L/8 (SigmaTooLarge
// otherwise); the bump is evaluated without periodic images, so its tails
// must vanish at the box edge (sigma well below L/8 in practice).  The seed
// feeds RandomBand only; draws follow a fixed mode order, a then u1 then u2.
State make_initial(InitKind kind, double amplitude, double sigma,
                   std::shared_ptr<const Grid> grid, std::uint64_t seed);

} // namespace fracns

#endif
