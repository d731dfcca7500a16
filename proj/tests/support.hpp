#pragma once
#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <string>

#include "gapfill/grid.hpp"

namespace testing {

using gapfill::cplx;

// Real grid whose spectrum is random on |xi|_inf <= limit and zero elsewhere.
inline gapfill::Grid2D band_limited(std::size_t n, long limit, std::uint64_t seed, bool real = true) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    gapfill::Spectrum2D s(n);
    for (long a = -limit; a <= limit; ++a)
        for (long b = -limit; b <= limit; ++b) s.at(a, b) = cplx(g(rng), g(rng));
    if (real) {
        for (long a = -limit; a <= limit; ++a)
            for (long b = -limit; b <= limit; ++b) {
                const cplx v = 0.5 * (s.at(a, b) + std::conj(s.at(-a, -b)));
                s.at(a, b) = v;
                s.at(-a, -b) = std::conj(v);
            }
        return gapfill::real_part(gapfill::idft(s));
    }
    return gapfill::idft(s);
}

inline double grid_distance(const gapfill::Grid2D& x, const gapfill::Grid2D& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i) s += std::norm(x.values[i] - y.values[i]);
    return std::sqrt(s / static_cast<double>(x.values.size()));
}

// <f, g> = (1/n^2) sum f conj(g), summed directly in space.
inline cplx inner(const gapfill::Grid2D& f, const gapfill::Grid2D& g) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
    return s / static_cast<double>(f.values.size());
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("gapfill_test_" + name);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testing
