#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapfill/errors.hpp"
#include "gapfill/fft.hpp"

namespace gapfill {

bool is_pow2(std::size_t n);
// Throws SizeError unless n is a power of two with n >= 16.
void check_grid_size(std::size_t n);

// FFT-order storage index of an integer frequency, and its inverse in [-n/2, n/2).
inline std::size_t fft_index(long xi, std::size_t n) {
    long m = static_cast<long>(n);
    long r = xi % m;
    return static_cast<std::size_t>(r < 0 ? r + m : r);
}
inline long centered(std::size_t idx, std::size_t n) {
    long i = static_cast<long>(idx), m = static_cast<long>(n);
    return i >= m / 2 ? i - m : i;
}

// Samples on the unit torus: values[m1*n + m2] sits at (m1/n, m2/n).
struct Grid2D {
    std::size_t n = 0;
    bool real = true;
    std::vector<cplx> values;

    Grid2D() = default;
    Grid2D(std::size_t n, bool real);

    cplx& operator()(std::size_t m1, std::size_t m2) { return values[m1 * n + m2]; }
    const cplx& operator()(std::size_t m1, std::size_t m2) const { return values[m1 * n + m2]; }

    // sqrt((1/n^2) sum |g|^2)
    double norm() const;
};

// Integer frequencies in FFT order; at(xi1, xi2) accepts centered indices.
struct Spectrum2D {
    std::size_t n = 0;
    std::vector<cplx> values;
    std::optional<int> corona;

    Spectrum2D() = default;
    explicit Spectrum2D(std::size_t n);

    cplx& at(long xi1, long xi2) { return values[fft_index(xi1, n) * n + fft_index(xi2, n)]; }
    const cplx& at(long xi1, long xi2) const {
        return values[fft_index(xi1, n) * n + fft_index(xi2, n)];
    }

    // sqrt(sum |S|^2)
    double norm() const;
};

// S(xi) = (1/n^2) sum_m g(m) e^{-2 pi i xi.m/n}
Spectrum2D dft(const Grid2D& g);
// Inverse of dft. The result is flagged complex; see real_part.
Grid2D idft(const Spectrum2D& s);
// Drops imaginary parts and flags the grid real.
Grid2D real_part(Grid2D g);

// True iff every entry outside C_j = [-2^{2j-1},2^{2j-1}]^2 \ [-2^{2j-4},2^{2j-4}]^2 is zero.
bool supported_in_corona(const Spectrum2D& s, int j);

void write_grid(const Grid2D& g, const std::string& path);
Grid2D read_grid(const std::string& path);

// Binary P5, maxval 255. Default range is [min, max] of the samples.
void export_pgm(const Grid2D& g, const std::string& path,
                std::optional<std::pair<double, double>> range = std::nullopt);

// Row-major raster of the given width and height.
void export_pgm(const std::vector<double>& values, std::size_t width, std::size_t height, const std::string& path,
                std::optional<std::pair<double, double>> range = std::nullopt);

struct GrayImage {
    std::size_t width = 0, height = 0;
    int maxval = 255;
    std::vector<std::uint16_t> pixels;
};
GrayImage read_pgm(const std::string& path);

}  // namespace gapfill
