#ifndef FRACNS_OPERATORS_H
#define FRACNS_OPERATORS_H

#include <functional>
#include <utility>

#include "fracns/spectral_field.h"

namespace fracns {

using FieldPair = std::pair<SpectralField, SpectralField>;

// Fourier multiplier |xi|^s.  The mean mode is zeroed for s > 0, passed
// through for s = 0, and rejected for s < 0 unless it is already zero.
SpectralField lambda_s(const SpectralField& f, double s);

// Derivative multipliers i*xi_j.  Both zero the Nyquist row and column:
// the odd multiplier has no consistent value there.
FieldPair gradient(const SpectralField& f);
SpectralField divergence(const FieldPair& v);
SpectralField divergence(const SpectralField& v1, const SpectralField& v2);

// Physical-grid product.  With dealias set, modes with max(|k_1|,|k_2|) > n/3
// are zeroed in both factors and in the result (the 2/3 rule).
SpectralField pointwise_product(const SpectralField& f, const SpectralField& g,
                                bool dealias);

// Composition with a scalar function on the physical grid; no dealiasing.
// Throws DomainViolation if phi produces a non-finite value.
SpectralField pointwise_map(const SpectralField& f,
                            const std::function<double(double)>& phi);

} // namespace fracns

#endif
