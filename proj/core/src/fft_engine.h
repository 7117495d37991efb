#ifndef FRACNS_FFT_ENGINE_H
#define FRACNS_FFT_ENGINE_H

#include <complex>

#include "fracns/grid.h"

namespace fracns::detail {

// Unnormalized transforms on cached FFTW plans (FFTW_ESTIMATE keeps planning
// deterministic).  c2r evaluates f_j = sum_k c_k exp(+i xi_k . x_j) and may
// read from a scratch copy (FFTW's c2r destroys its input); r2c evaluates the
// conjugate sum without the 1/n^2 factor.  Not thread safe.
void c2r(const Grid& g, const std::complex<double>* in, double* out);
void r2c(const Grid& g, const double* in, std::complex<double>* out);

} // namespace fracns::detail

#endif
