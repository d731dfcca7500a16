#pragma once

#include <cstdint>
#include <vector>

#include "gapfill/grid.hpp"

namespace gapfill {

struct LineModelSpec {
    double rho = 0.35;  // half-length of the segment; must lie in (0, 1/2)
};

void validate(const LineModelSpec& spec);

// exp(1 - 1/(1 - (x/rho)^2)) on |x| < rho, 0 outside.
double weight(const LineModelSpec& spec, double x);

// Fourier transform of the weight, by Gauss-Legendre quadrature
// (absolute accuracy well below 1e-10). Real because the weight is even.
cplx weight_hat(const LineModelSpec& spec, double xi);

// weight_hat at the integer frequencies of an n-grid, indexed in FFT order.
// Cached per (rho, n).
const std::vector<double>& weight_hat_table(const LineModelSpec& spec, std::size_t n);

// sum over iota of |W^iota(xi / 2^s)| for one wavelet scale s.
Spectrum2D bandpass_single(int s, std::size_t n);
// F_j = single(2j) + single(2j+1); supported in the corona C_j.
Spectrum2D bandpass_F(int j, std::size_t n);

// Real grid with spectrum weight_hat(xi1) * F_j(xi); the segment lies on x2 = 0.
Grid2D filtered_line_image(const LineModelSpec& spec, int j, std::size_t n);

struct MaskSpec {
    double h = 0.0;     // strip half-width; NaN for masks not built from a strip
    Grid2D indicator;   // 1 on missing samples, 0 on known ones
};

// Number c such that rows with |m1| <= c form the sampled strip |x1| <= h,
// rounded outward to whole rows.
long strip_half_rows(double h, std::size_t n);

// Strip |x1| <= h (rows of the grid). Throws ModelError unless 0 <= h < rho.
MaskSpec strip_mask(double h, std::size_t n, const LineModelSpec& spec = {});
MaskSpec mask_from_indicator(Grid2D indicator);

// (1 - M) f and M f.
Grid2D apply_known(const Grid2D& f, const MaskSpec& mask);
Grid2D apply_missing(const Grid2D& f, const MaskSpec& mask);

// Discrete Dirichlet kernel of the strip: (1/n) sum_{|m| <= c} e^{-2 pi i xi m / n}.
double strip_kernel(double h, std::size_t n, long xi);

// Max abs difference between dft(M f) and the row-wise convolution of dft(f)
// with strip_kernel, for an internal random band-limited f.
double mask_spectrum_check(double h, std::size_t n, std::uint64_t seed = 7);

}  // namespace gapfill
