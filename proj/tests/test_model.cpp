#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gapfill/harness.hpp"
#include "gapfill/meyer.hpp"
#include "gapfill/model.hpp"
#include "support.hpp"

using namespace gapfill;

namespace {

// Composite Simpson rule for the cosine transform of the weight.
double simpson_weight_hat(const LineModelSpec& spec, double xi) {
    const int m = 20000;
    const double a = -spec.rho, h = 2.0 * spec.rho / m;
    double s = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double x = a + i * h;
        const double f = weight(spec, x) * std::cos(2.0 * std::numbers::pi * xi * x);
        s += f * (i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("weight transform") {
    const LineModelSpec spec;
    CHECK(weight(spec, 0.0) == 1.0);
    CHECK(weight(spec, 0.35) == 0.0);
    CHECK(weight(spec, -0.4) == 0.0);
    const double w0 = weight_hat(spec, 0.0).real();
    CHECK(w0 > 0.0);
    CHECK(std::abs(w0 - simpson_weight_hat(spec, 0.0)) < 1e-10);
    for (int i = 1; i <= 100; ++i) {
        const double xi = 0.37 * i;
        const cplx v = weight_hat(spec, xi);
        CHECK(std::abs(v - std::conj(weight_hat(spec, -xi))) < 1e-14);
        CHECK(std::abs(v.imag()) < 1e-14);
        CHECK(std::abs(v.real() - simpson_weight_hat(spec, xi)) < 1e-10);
        CHECK(std::abs(v) <= w0);
    }
    CHECK_THROWS_AS(validate(LineModelSpec{0.6}), ModelError);
    CHECK_THROWS_AS(validate(LineModelSpec{0.0}), ModelError);
}

TEST_CASE("band-pass filters") {
    const std::size_t n = 128;
    for (int j = 1; j <= 3; ++j) {
        const Spectrum2D F = bandpass_F(j, n);
        const Spectrum2D a = bandpass_single(2 * j, n), b = bandpass_single(2 * j + 1, n);
        const long inner = 1L << (2 * j - 4 < 0 ? 0 : 2 * j - 4);
        for (long x1 = -64; x1 < 64; ++x1)
            for (long x2 = -64; x2 < 64; ++x2) {
                CHECK(F.at(x1, x2) == a.at(x1, x2) + b.at(x1, x2));
                CHECK(F.at(x1, x2).real() >= 0.0);
                if (2 * j - 4 >= 0 && std::max(std::abs(x1), std::abs(x2)) <= inner) CHECK(F.at(x1, x2) == 0.0);
            }
        CHECK(supported_in_corona(F, j));
    }
    // single-scale filter against the Meyer windows at generic frequencies
    for (int s = 2; s <= 6; ++s) {
        const Spectrum2D single = bandpass_single(s, n);
        const double m = std::ldexp(1.0, s);
        for (long x1 : {-13L, -5L, 3L, 7L, 22L})
            for (long x2 : {-9L, 1L, 4L, 11L, 30L}) {
                double expect = 0.0;
                for (Orient o : {Orient::h, Orient::v, Orient::d}) expect += std::abs(meyer_window(o, x1 / m, x2 / m));
                CHECK(std::abs(single.at(x1, x2).real() - expect) < 1e-12);
            }
    }
    CHECK_THROWS_AS(bandpass_F(5, 128), ScaleError);
}

TEST_CASE("filtered line image") {
    const LineModelSpec spec;
    std::vector<double> norms;
    for (int j = 2; j <= 5; ++j) {
        const std::size_t n = level_grid_size(j);
        const Grid2D line = filtered_line_image(spec, j, n);
        CHECK(line.real);
        // energy sits on the row x2 = 0
        double near = 0.0, total = 0.0;
        const double band = 8.0 * std::ldexp(1.0, -2 * j);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const double e = std::norm(line(a, b));
                total += e;
                if (std::abs(centered(b, n)) / static_cast<double>(n) <= band) near += e;
            }
        CHECK(near >= 0.9 * total);
        // spectrum divided by F_j does not depend on xi2
        const Spectrum2D s = dft(line), F = bandpass_F(j, n);
        const auto& wh = weight_hat_table(spec, n);
        double worst = 0.0;
        for (std::size_t i = 0; i < s.values.size(); ++i)
            if (F.values[i].real() > 1e-6) worst = std::max(worst, std::abs(s.values[i] / F.values[i] - wh[i / n]));
        CHECK(worst < 1e-9 * std::abs(wh[0]));
        norms.push_back(line.norm());
    }
    for (std::size_t i = 1; i < norms.size(); ++i) {
        const double ratio = norms[i] / norms[i - 1];
        CHECK(ratio >= 1.7);
        CHECK(ratio <= 2.3);
        CHECK(std::abs(std::log2(ratio) - 1.0) <= 0.3);
    }
    CHECK_THROWS_AS(filtered_line_image(spec, 6, 256), ScaleError);
    CHECK_THROWS_AS(filtered_line_image(spec, -1, 256), ScaleError);
}

TEST_CASE("strip masks") {
    const std::size_t n = 256;
    const Grid2D f = testing::band_limited(n, 40, 2);
    const MaskSpec zero = strip_mask(0.0, n);
    std::size_t missing = 0;
    for (const auto& v : zero.indicator.values) missing += v.real() != 0.0;
    CHECK(missing == n);
    for (std::size_t b = 0; b < n; ++b) CHECK(zero.indicator(0, b) == 1.0);
    for (double h : {0.0, 0.01, 0.05, 0.1, 0.2}) {
        const MaskSpec m = strip_mask(h, n);
        const Grid2D known = apply_known(f, m), lost = apply_missing(f, m);
        bool exact = true;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            exact = exact && known.values[i] + lost.values[i] == f.values[i];
        CHECK(exact);
        CHECK(apply_known(lost, m).norm() == 0.0);
        std::size_t rows = 0;
        for (std::size_t a = 0; a < n; ++a) rows += m.indicator(a, 0).real() != 0.0;
        const double frac = static_cast<double>(rows) / static_cast<double>(n);
        // rounded outward: never below 2h, at most three rows above
        CHECK(frac >= 2.0 * h);
        CHECK(frac < 2.0 * h + 3.0 / static_cast<double>(n));
    }
    CHECK_THROWS_AS(strip_mask(0.35, n), ModelError);
    CHECK_THROWS_AS(strip_mask(-0.1, n), ModelError);
    CHECK_THROWS_AS(apply_known(Grid2D(64, true), strip_mask(0.1, n)), ShapeError);
    Grid2D bad(16, true);
    bad.values[3] = 0.5;
    CHECK_THROWS_AS(mask_from_indicator(bad), ModelError);
}

TEST_CASE("mask spectrum identity") {
    const std::size_t n = 256;
    CHECK(mask_spectrum_check(0.1, n) < 1e-10);
    CHECK(mask_spectrum_check(0.03, n, 99) < 1e-10);
    CHECK(mask_spectrum_check(0.5, n) < 1e-12);
    for (long xi = -5; xi <= 5; ++xi) CHECK(strip_kernel(0.5, n, xi) == (xi == 0 ? 1.0 : 0.0));
    // pure tone: the masked spectrum is the strip kernel shifted to the tone
    Grid2D tone(n, false);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            tone(a, b) = std::polar(1.0, 2.0 * std::numbers::pi * (3.0 * a + 5.0 * b) / static_cast<double>(n));
    const double h = 0.07;
    const Spectrum2D s = dft(apply_missing(tone, strip_mask(h, n)));
    const long c = strip_half_rows(h, n);
    double worst = 0.0;
    for (long x1 = -128; x1 < 128; ++x1) {
        // closed-form Dirichlet sum
        const long r = x1 - 3;
        double expect;
        if (r == 0) {
            expect = static_cast<double>(2 * c + 1) / n;
        } else {
            cplx acc = 0.0;
            for (long m = -c; m <= c; ++m) acc += std::polar(1.0, -2.0 * std::numbers::pi * r * m / n);
            expect = acc.real() / n;
        }
        worst = std::max(worst, std::abs(s.at(x1, 5) - expect));
        worst = std::max(worst, std::abs(strip_kernel(h, n, r) - expect));
        worst = std::max(worst, std::abs(s.at(x1, 6)));
    }
    CHECK(worst < 1e-12);
}
