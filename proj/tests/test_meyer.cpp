#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gapfill/harness.hpp"
#include "gapfill/meyer.hpp"
#include "gapfill/model.hpp"
#include "support.hpp"

using namespace gapfill;

namespace {

// Atom with lattice index k at scale j built straight from the window formula:
// spectrum 2^{-j} W(xi / 2^j) e^{-2 pi i xi.k / 2^j}.
Grid2D direct_wavelet_atom(Orient o, int j, long k1, long k2, std::size_t n) {
    Spectrum2D s(n);
    const double m = std::ldexp(1.0, j);
    for (long x1 = -static_cast<long>(n) / 2; x1 < static_cast<long>(n) / 2; ++x1)
        for (long x2 = -static_cast<long>(n) / 2; x2 < static_cast<long>(n) / 2; ++x2) {
            const cplx w = meyer_window(o, x1 / m, x2 / m);
            if (w == cplx(0.0, 0.0)) continue;
            s.at(x1, x2) = w / m * std::polar(1.0, -2.0 * std::numbers::pi * (x1 * k1 + x2 * k2) / m);
        }
    return idft(s);
}

}  // namespace

TEST_CASE("ramp") {
    CHECK(nu_ramp(-1.0) == 0.0);
    CHECK(nu_ramp(2.0) == 1.0);
    CHECK(nu_ramp(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(nu_ramp(0.3) + nu_ramp(0.7) == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK(std::abs(nu_ramp(x) + nu_ramp(1.0 - x) - 1.0) < 1e-13);
    }
}

TEST_CASE("window values") {
    CHECK(meyer_phi_hat(0.0) == 1.0);
    CHECK(meyer_W(0.05) == cplx(0.0, 0.0));
    CHECK(meyer_W(0.3) == cplx(0.0, 0.0));
    double sum = std::norm(meyer_phi_hat(0.2));
    for (int j = 0; j <= 6; ++j) sum += std::norm(meyer_W(0.2 / std::ldexp(1.0, j)));
    CHECK(std::abs(sum - 1.0) < 1e-12);
    // the identity holds on the whole line once enough scales are summed
    for (int i = 0; i < 1000; ++i) {
        const double xi = -3.0 + 6.0 * i / 999.0;
        double s = std::norm(meyer_phi_hat(xi));
        for (int j = 0; j <= 8; ++j) s += std::norm(meyer_W(xi / std::ldexp(1.0, j)));
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
    // Hermitian
    CHECK(std::abs(meyer_W(-0.17) - std::conj(meyer_W(0.17))) < 1e-15);
}

TEST_CASE("wavelet atom spectrum support and norms") {
    const std::size_t n = 64;
    const Spectrum2D v = wavelet_atom_spectrum(Orient::v, 4, n);
    for (long x1 = -32; x1 < 32; ++x1)
        for (long x2 = -32; x2 < 32; ++x2)
            if (v.at(x1, x2) != cplx(0.0, 0.0)) {
                CHECK(std::abs(x1) <= 2);
                CHECK(std::abs(x2) >= 1);
                CHECK(std::abs(x2) <= 4);
            }
    CHECK_THROWS_AS(wavelet_atom_spectrum(Orient::v, 8, n), ScaleError);
    for (int j = 4; j <= 8; ++j) {
        const double nh = wavelet_atom_spectrum(Orient::h, j, 256).norm();
        CHECK(std::abs(wavelet_atom_spectrum(Orient::v, j, 256).norm() - nh) < 1e-12);
        const double nd = wavelet_atom_spectrum(Orient::d, j, 256).norm();
        CHECK(nd > 0.0);
        CHECK(nh > 0.0);
    }
}

TEST_CASE("fast analysis equals inner products with directly built atoms") {
    for (std::size_t n : {32u, 64u}) {
        const int jmax = n == 32 ? 5 : 6;
        const auto frame = meyer_frame(n, 0, jmax);
        const Grid2D f = testing::band_limited(n, static_cast<long>(n / 2) - 1, n, false);
        const CoefficientSet c = frame->analyze(f);
        double err = 0.0;
        std::size_t checked = 0;
        for (std::size_t bi = 0; bi < frame->bands().size(); ++bi) {
            const Band& b = frame->bands()[bi];
            if (b.key.orient == Orient::residual) continue;
            const Orient o = b.key.orient;
            const std::size_t step = b.size() > 256 ? 7 : 1;
            for (std::size_t idx = 0; idx < b.size(); idx += step) {
                const long k1 = static_cast<long>(idx / b.m2), k2 = static_cast<long>(idx % b.m2);
                const cplx direct = testing::inner(f, direct_wavelet_atom(o, b.key.scale, k1, k2, n));
                err = std::max(err, std::abs(direct - c.bands[bi][idx]));
                ++checked;
            }
        }
        CHECK(checked > 100);
        CHECK(err < 1e-10);
    }
}

TEST_CASE("real path agrees with the complex path") {
    const auto frame = meyer_frame(64, 1, 5);
    const Grid2D f = testing::band_limited(64, 31, 5);
    const CoefficientSet c = frame->analyze(f);
    const RealCoefficients r = frame->analyze_real(f);
    double err = 0.0;
    for (std::size_t b = 0; b < c.bands.size(); ++b)
        for (std::size_t i = 0; i < c.bands[b].size(); ++i)
            err = std::max(err, std::abs(c.bands[b][i] - r.bands[b][i]));
    CHECK(err < 1e-13);
    CHECK(testing::grid_distance(frame->synthesize_real(r), f) < 1e-12);
    CHECK_THROWS_AS(frame->analyze_real(testing::band_limited(64, 10, 1, false)), TypeError);
}

TEST_CASE("tightness and round trips") {
    for (std::size_t n : {64u, 256u}) {
        const auto frame = meyer_frame(n, 1, static_cast<int>(std::log2(n)) + 1);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Grid2D f = testing::band_limited(n, static_cast<long>(n / 4), seed, seed % 2 == 0);
            const CoefficientSet c = wavelet_analysis(*frame, f);
            CHECK(std::abs(c.l2_norm() / f.norm() - 1.0) < 1e-8);
            CHECK(testing::grid_distance(wavelet_synthesis(*frame, c), f) / f.norm() < 1e-8);
        }
    }
    const auto frame = meyer_frame(64, 1, 6);
    const CoefficientSet z = frame->analyze(Grid2D(64, true));
    CHECK(z.l2_norm() == 0.0);
    CHECK(frame->synthesize(frame->zeros()).norm() == 0.0);
    CoefficientSet bad = frame->zeros();
    bad.bands[1].pop_back();
    CHECK_THROWS_AS(frame->synthesize(bad), ShapeError);
    CHECK_THROWS_AS(meyer_frame(64, 3, 2), ArgumentError);
}

TEST_CASE("filtered line image round trips through the level frame") {
    for (int j = 2; j <= 3; ++j) {
        const std::size_t n = level_grid_size(j);
        const auto frame = meyer_level_frame(n, j);
        const Grid2D line = filtered_line_image({}, j, n);
        const Grid2D back = frame->synthesize_real(frame->analyze_real(line));
        CHECK(testing::grid_distance(back, line) / line.norm() < 1e-8);
    }
}

TEST_CASE("single atom energy spreads as the frame operator prescribes") {
    const std::size_t n = 64;
    const auto frame = meyer_frame(n, 1, 6);
    std::size_t vb = 0;
    for (std::size_t i = 0; i < frame->bands().size(); ++i)
        if (frame->bands()[i].key == BandKey{Orient::v, 4, 0}) vb = i;
    const Spectrum2D atom = frame->atom_spectrum(vb, 0, 0);
    const CoefficientSet c = frame->analyze(atom);
    // sum_lambda |<psi_mu, psi_lambda>|^2 = ||psi_mu||^2 and <psi_mu, psi_mu> = ||psi_mu||^2
    CHECK(std::abs(c.l2_norm() - atom.norm()) < 1e-12);
    CHECK(std::abs(c.bands[vb][0] - cplx(atom.norm() * atom.norm(), 0.0)) < 1e-12);
}

TEST_CASE("partition of unity on covered frequencies") {
    const std::size_t n = 256;
    const int jmin = 1, jmax = 9;
    double worst = 0.0;
    for (long x1 = -128; x1 < 128; ++x1)
        for (long x2 = -128; x2 < 128; ++x2) {
            if (std::max(std::abs(x1), std::abs(x2)) > std::ldexp(1.0, jmax) / 8.0) continue;
            const double m0 = std::ldexp(1.0, jmin);
            double s = std::norm(meyer_window(Orient::coarse, x1 / m0, x2 / m0));
            for (int j = jmin; j <= jmax; ++j) {
                const double m = std::ldexp(1.0, j);
                for (Orient o : {Orient::h, Orient::v, Orient::d}) s += std::norm(meyer_window(o, x1 / m, x2 / m));
            }
            worst = std::max(worst, std::abs(s - 1.0));
        }
    CHECK(worst < 1e-10);
    CHECK(tiling_deviation(FrameKind::meyer, n) < 1e-10);
}
