#pragma once

#include <complex>
#include <cstddef>

namespace gapfill {

using cplx = std::complex<double>;

// Unnormalized in-place 2D DFT on a row-major m1 x m2 array.
// sign = -1 computes sum x e^{-2 pi i k.r/m}, sign = +1 the conjugate kernel.
void fft2_inplace(cplx* data, std::size_t m1, std::size_t m2, int sign);

// Same for a single contiguous row of length m.
void fft1_inplace(cplx* data, std::size_t m, int sign);

// Real-data transforms on m1 x m2 arrays with the Hermitian half spectrum
// stored as m1 x (m2/2 + 1). Both unnormalized.
// r2c: half = sum x e^{-2 pi i k.r/m}. c2r: x = sum over the full Hermitian
// extension of half times e^{+2 pi i k.r/m}; `half` is overwritten.
void r2c_2d(const double* in, cplx* half, std::size_t m1, std::size_t m2);
void c2r_2d(cplx* half, double* out, std::size_t m1, std::size_t m2);

}  // namespace gapfill
