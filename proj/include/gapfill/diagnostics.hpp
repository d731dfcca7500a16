#pragma once
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>
#include "gapfill/frame.hpp"
#include "gapfill/model.hpp"

namespace gapfill {

struct ClusterSet {
    FrameKind kind = FrameKind::meyer;
    int j = 0;
    double eps = 0.125;
    double rho = 0.35;
    IndexMask members;  // over the bands of the frame it was built for

    std::size_t size() const;
};

// Cluster width: 2^{eps j} for wavelets, 2^{2 eps j} for shearlets (the
// shearlet k2 lattice is 4^{-j}).
double cluster_width(FrameKind kind, int j, double eps);

// Wavelets: h, v, d bands at scales 2j and 2j+1 with |k1| <= rho n_j 2^s and
// |k2| <= n_j. Shearlets: the v band of level j with shear 0 and
// |k1| <= rho n_j 2^j, |k2| <= n_j. k is the centred lattice index.
// Throws ArgumentError for eps <= 0 and for shearlet eps >= 1/4.
ClusterSet cluster_set(const Frame& frame, int j, double eps, double rho);

// l1 mass of the coefficients outside the member set.
double clustered_sparsity_delta(const RealCoefficients& c, const IndexMask& members);
// l1 mass of the coefficients inside it.
double cluster_mass(const RealCoefficients& c, const IndexMask& members);

// max over frame atoms p of sum_{i in members} |<M phi_i, phi_p>|, exact.
// The strip must be invariant along x2 (every column of the indicator equal).
double cluster_coherence(const IndexMask& members, const MaskSpec& mask, const Frame& frame);
// Direct double loop over atom pairs; for small grids only.
double cluster_coherence_bruteforce(const IndexMask& members, const MaskSpec& mask, const Frame& frame);

// max over random Gaussian probes f = M f of ||1_members Phi^* f||_1 / ||Phi^* f||_1.
double concentration_estimate(const IndexMask& members, const MaskSpec& mask, const Frame& frame,
                              std::size_t n_probes, std::uint64_t seed);

struct BoundReport {
    double delta = 0.0;
    double mu_c = 0.0;
    double kappa_hat = std::numeric_limits<double>::quiet_NaN();
    double eps_noise = 0.0;
    double bound_l1 = 0.0;
    double bound_thresh = 0.0;
    bool valid = false;  // mu_c < 1/2
};

// bound_l1 = (2 delta + (3 + 2 mu_c) eps) / (1 - 2 mu_c), +inf unless mu_c < 1/2;
// bound_thresh = c (mass + delta + eps).
BoundReport error_bounds(double delta, double mu_c, double eps_noise, double frame_norm_c,
                         double masked_cluster_mass);

// Atom norm shared by every atom of the members' bands (they are equal
// within a band); the largest one if several bands are involved.
double frame_norm_constant(const Frame& frame, const IndexMask& members);

// sum_{i in T} |<M x0, phi_i>|
double masked_cluster_mass(const IndexMask& T, const MaskSpec& mask, const Grid2D& x0, const Frame& frame);

// Smallest integer K with |int_{|x|<K} phi| >= 0.5 |int phi| for the Meyer
// scaling function, in units of its own lattice.
int meyer_K0();

enum class ProfileAxis { k1, k2, shear };

struct ProfileEntry {
    long index = 0;
    double value = 0.0;
};

// max |coefficient| bucketed by centred k1, centred k2 or shear over the
// bands of one scale (wavelet scale or shearlet level). With on_axis the
// other lattice index is held at 0. For shearlets only the given cone is
// used (the v cone carries the line).
std::vector<ProfileEntry> decay_profile(const RealCoefficients& c, const Frame& frame, ProfileAxis axis,
                                        int scale, bool on_axis, Orient cone = Orient::v);

struct Portrait {
    std::vector<double> t;  // translations t1 (t2 = 0)
    std::vector<double> s;  // shears
    std::vector<double> values;  // |coefficient|, row per shear
};

// |<f, sigma_{a,s,(t1,0)}>| over the translations grid_t and the given shears.
Portrait phase_space_portrait(const Spectrum2D& f, double a, const std::vector<double>& grid_t,
                              const std::vector<double>& shears, Orient cone = Orient::v);
// grid_t = every pixel position t1 = i/n - 1/2
Portrait phase_space_portrait(const Spectrum2D& f, double a, const std::vector<double>& shears,
                              Orient cone = Orient::v);
std::vector<double> uniform_grid_t(std::size_t count);
void export_portrait(const Portrait& p, const std::string& path);

struct GapEdges {
    long left = 0, right = 0;     // first and last t index below the cut
    double t_left = 0.0, t_right = 0.0;  // edges, halfway to the neighbouring samples
    double width = 0.0;
};

// Contiguous run around the sample nearest t1 = 0 where the ridge of `masked`
// in the given shear row falls below frac times the same row of `reference`.
GapEdges ridge_gap(const Portrait& masked, const Portrait& reference, std::size_t shear_row, double frac = 0.5);

}  // namespace gapfill
