#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gapfill/grid.hpp"

namespace gapfill {

enum class FrameKind { meyer, shearlet };

enum class Orient { coarse, h, v, d, seam, residual };

const char* orient_name(Orient o);

struct BandKey {
    Orient orient = Orient::coarse;
    int scale = 0;
    int shear = 0;
    bool operator==(const BandKey&) const = default;
};

// One filter band of a Parseval frame on the n x n torus. Its atoms are the
// translates of a single window over an m1 x m2 lattice: the coefficient at
// lattice index (a, b) is
//   norm * sum_xi F(xi) conj(win(xi)) e^{sign * 2 pi i (xi1 a/m1 + xi2 b/m2)}
// and the atom sits at sign * (a/m1, b/m2) up to the window's own phase.
struct Band {
    BandKey key;
    std::size_t m1 = 1, m2 = 1;
    double norm = 1.0;
    int sign = +1;
    std::vector<std::uint32_t> freq;  // flat FFT-order grid index of each support point
    std::vector<std::uint32_t> fold;  // flat m1 x m2 index the point folds onto
    std::vector<cplx> win;

    std::size_t size() const { return m1 * m2; }
};

struct CoefficientSet {
    std::vector<std::vector<cplx>> bands;

    std::size_t count() const;
    double l2_norm() const;
    double l1_norm() const;
};

// Coefficients of a real signal. Every window in this library is Hermitian
// (W(-xi) = conj W(xi)), so real inputs have real coefficients and the real
// path runs on half-spectrum transforms.
struct RealCoefficients {
    std::vector<std::vector<double>> bands;

    std::size_t count() const;
    double l2_norm() const;
    double l1_norm() const;
};

// Hermitian half of dft(g) for a real grid: n x (n/2 + 1), same scaling as dft.
struct HalfSpectrum {
    std::size_t n = 0;
    std::vector<cplx> values;

    // Value at a full FFT-order flat index.
    cplx at(std::size_t flat) const {
        const std::size_t h = n / 2 + 1, a = flat / n, b = flat % n;
        if (b < h) return values[a * h + b];
        return std::conj(values[((n - a) % n) * h + (n - b)]);
    }
};

HalfSpectrum real_dft(const Grid2D& g);
Grid2D real_idft(HalfSpectrum s);

// Per-band boolean selection over the coefficient lattice.
using IndexMask = std::vector<std::vector<std::uint8_t>>;

class Frame {
public:
    Frame(FrameKind kind, std::size_t n, std::vector<Band> bands);

    FrameKind kind() const { return kind_; }
    std::size_t n() const { return n_; }
    const std::vector<Band>& bands() const { return bands_; }
    std::size_t coefficient_count() const;

    CoefficientSet analyze(const Grid2D& f) const;
    CoefficientSet analyze(const Spectrum2D& s) const;
    // Analysis restricted to the bands flagged in `which` (others left empty).
    CoefficientSet analyze(const Spectrum2D& s, const std::vector<std::uint8_t>& which) const;
    Grid2D synthesize(const CoefficientSet& c) const;
    Spectrum2D synthesize_spectrum(const CoefficientSet& c) const;

    // Real path; f must be flagged real.
    RealCoefficients analyze_real(const Grid2D& f) const;
    RealCoefficients analyze_real(const HalfSpectrum& s) const;
    RealCoefficients analyze_real(const HalfSpectrum& s, const std::vector<std::uint8_t>& which) const;
    Grid2D synthesize_real(const RealCoefficients& c) const;
    RealCoefficients real_zeros() const;

    // sum over bands of |win|^2 * m1 m2 norm^2 at every grid frequency (FFT order).
    std::vector<double> coverage() const;

    IndexMask empty_mask() const;
    IndexMask full_mask() const;
    CoefficientSet zeros() const;

    // Spectrum of the atom with lattice index (a, b) of band `band`.
    Spectrum2D atom_spectrum(std::size_t band, std::size_t a, std::size_t b) const;

private:
    FrameKind kind_;
    std::size_t n_;
    std::vector<Band> bands_;
};

// Builds a band from a window sampled on the whole grid (FFT order). Zero
// entries are dropped. Throws ScaleError if two support points share a fold slot.
Band make_band(BandKey key, std::size_t n, const std::vector<cplx>& window, std::size_t m1,
               std::size_t m2, double norm, int sign);
// Same from an explicit support list (flat FFT-order indices and window values).
Band make_band(BandKey key, std::size_t n, const std::vector<std::uint32_t>& freq,
               const std::vector<cplx>& win, std::size_t m1, std::size_t m2, double norm, int sign);

// Real coefficients of one band for the spectrum s translated by shift2
// (unit-torus units) along x2. `work` is scratch space.
void analyze_band_real(const Band& b, const HalfSpectrum& s, std::vector<double>& out, std::vector<cplx>& work,
                       double shift2 = 0.0);

// Pixel-lattice band sqrt(1 - coverage) completing `bands` to a Parseval frame
// of the whole grid. Returns false (and leaves `out` untouched) if coverage is
// already 1 everywhere.
bool residual_band(std::size_t n, const std::vector<Band>& bands, Band& out);

// Writes per band a text header line followed by the coefficient array in the
// grid file layout (complex flag, row-major m1 x m2 values, interleaved).
void dump_coefficients(const Frame& frame, const CoefficientSet& c, const std::string& path);

}  // namespace gapfill
