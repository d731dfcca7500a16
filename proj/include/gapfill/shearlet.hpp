#pragma once

#include <memory>

#include "gapfill/frame.hpp"

namespace gapfill {

// cos((pi/2) nu(|x|)) on |x| <= 1, zero outside.
double bump_V(double x);

// sqrt(|phi_hat(xi/4)|^2 - |phi_hat(xi)|^2) with the tensor scaling function.
double corona_window(double xi1, double xi2);

// Window of the (cone, j, ell) band at a frequency, without normalization or
// translation phase. cone is h, v or seam; seam needs |ell| = 2^j (1 for j = 0).
double shearlet_window(Orient cone, int j, int ell, double xi1, double xi2);

struct ShearletIndex {
    Orient cone = Orient::v;  // coarse, h, v or seam
    int j = 0;
    int ell = 0;
    long k1 = 0, k2 = 0;
};

// Exact sampled spectrum of one atom, translation phase included.
Spectrum2D shearlet_atom_spectrum(const ShearletIndex& idx, std::size_t n);

// Translation lattice moduli (along xi1, xi2) of a band before pixel capping.
std::pair<std::size_t, std::size_t> shearlet_moduli(Orient cone, int j);

// Cone-adapted shearlet Parseval frame on the n-grid with levels 0..jmax,
// completed by a pixel-lattice residual band above the top corona.
// Throws ScaleError if corona jmax does not fit the grid.
std::shared_ptr<const Frame> shearlet_frame(std::size_t n, int jmax);

CoefficientSet shearlet_analysis(const Frame& frame, const Grid2D& f);
Grid2D shearlet_synthesis(const Frame& frame, const CoefficientSet& c);

// Lattice index (a, b) in a band of `frame` holding the atom with translation
// (k1, k2) of the given cone, level and shear.
std::pair<std::size_t, std::size_t> shearlet_lattice_index(const Band& band, long k1, long k2);

// <f, sigma_{a,s,t}> for arbitrary real a in (0,1], shear s and translation t,
// by direct summation over the grid spectrum. cone is h, v or seam.
cplx continuous_shearlet_coeff(const Spectrum2D& f, double a, double s, double t1, double t2, Orient cone);

}  // namespace gapfill
