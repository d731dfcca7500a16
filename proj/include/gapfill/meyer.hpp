#pragma once

#include <memory>

#include "gapfill/frame.hpp"

namespace gapfill {

// x^4 (35 - 84x + 70x^2 - 20x^3) on [0,1], clamped to 0 below and 1 above.
double nu_ramp(double x);

// cos / sin of (pi/2) v that are exactly 1 and 0 at the ends of the ramp.
double ramp_cos(double v);
double ramp_sin(double v);

// Supported on 1/16 <= |xi| <= 1/4, with the phase factors e^{-16 pi i xi/3}
// (inner half) and e^{-8 pi i xi/3} (outer half).
cplx meyer_W(double xi);
// 1 on |xi| <= 1/16, 0 for |xi| >= 1/8.
double meyer_phi_hat(double xi);

// Tensor window at a single frequency; Orient::coarse gives phi_hat x phi_hat.
cplx meyer_window(Orient o, double xi1, double xi2);

// 2^{-j} W^iota(xi / 2^j) sampled at the integer frequencies of an n-grid.
// Throws ScaleError if 2^j / 4 > n / 2.
Spectrum2D wavelet_atom_spectrum(Orient o, int j, std::size_t n);

// Meyer Parseval frame of the n-grid: a coarse layer at scale jmin, the h, v,
// d bands at scales jmin..jmax, and a pixel-lattice residual band for whatever
// the scale range leaves uncovered near Nyquist. The translation lattice at
// scale j is 2^j x 2^j, capped at the pixel lattice n x n.
std::shared_ptr<const Frame> meyer_frame(std::size_t n, int jmin, int jmax);

// Scale range used for line-model level j: wavelet scales 2j-1 .. 2j+2 with
// the top scale limited to what fits the grid.
std::shared_ptr<const Frame> meyer_level_frame(std::size_t n, int j);

CoefficientSet wavelet_analysis(const Frame& frame, const Grid2D& f);
Grid2D wavelet_synthesis(const Frame& frame, const CoefficientSet& c);

}  // namespace gapfill
