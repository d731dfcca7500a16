#include "gapfill/model.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "gapfill/meyer.hpp"

namespace gapfill {

void validate(const LineModelSpec& spec) {
    if (!(spec.rho > 0.0 && spec.rho < 0.5)) throw ModelError("rho must lie in (0, 1/2)");
}

double weight(const LineModelSpec& spec, double x) {
    const double r = x / spec.rho;
    if (std::abs(r) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

cplx weight_hat(const LineModelSpec& spec, double xi) {
    validate(spec);
    const double pi = std::numbers::pi;
    auto integrand = [&](double t) { return weight(spec, t) * std::cos(2 * pi * xi * t); };
    // Composite 30-point Gauss-Legendre with at least four panels per period of
    // the cosine; the weight is flat to all orders at the support ends, so each
    // panel converges spectrally.
    const int panels = std::max(16, static_cast<int>(std::ceil(4.0 * std::abs(xi) * spec.rho)));
    const double width = spec.rho / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p)
        sum += boost::math::quadrature::gauss<double, 30>::integrate(integrand, p * width, (p + 1) * width);
    return 2.0 * sum;
}

const std::vector<double>& weight_hat_table(const LineModelSpec& spec, std::size_t n) {
    static std::mutex mu;
    static std::map<std::pair<double, std::size_t>, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(spec.rho, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<double> t(n);
    for (std::size_t i = 0; i <= n / 2; ++i) {
        const double v = weight_hat(spec, static_cast<double>(i)).real();
        t[i] = v;
        t[(n - i) % n] = v;
    }
    return cache.emplace(key, std::move(t)).first->second;
}

namespace {

void check_level_fits(int j, std::size_t n) {
    if (j < 0) throw ScaleError("negative line-model level");
    if (std::ldexp(1.0, 2 * j - 1) > static_cast<double>(n) / 2.0)
        throw ScaleError("corona " + std::to_string(j) + " does not fit an n=" + std::to_string(n) + " grid");
}

}  // namespace

Spectrum2D bandpass_single(int s, std::size_t n) {
    check_grid_size(n);
    if (s < 0) throw ScaleError("negative wavelet scale");
    Spectrum2D out(n);
    const double m = std::ldexp(1.0, s);
    for (std::size_t a = 0; a < n; ++a) {
        const double x1 = static_cast<double>(centered(a, n)) / m;
        for (std::size_t b = 0; b < n; ++b) {
            const double x2 = static_cast<double>(centered(b, n)) / m;
            double v = 0.0;
            for (Orient o : {Orient::h, Orient::v, Orient::d}) v += std::abs(meyer_window(o, x1, x2));
            out.values[a * n + b] = v;
        }
    }
    return out;
}

Spectrum2D bandpass_F(int j, std::size_t n) {
    check_grid_size(n);
    check_level_fits(j, n);
    Spectrum2D f = bandpass_single(2 * j, n);
    const Spectrum2D g = bandpass_single(2 * j + 1, n);
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += g.values[i];
    f.corona = j;
    return f;
}

Grid2D filtered_line_image(const LineModelSpec& spec, int j, std::size_t n) {
    validate(spec);
    Spectrum2D s = bandpass_F(j, n);
    const auto& wh = weight_hat_table(spec, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s.values[a * n + b] *= wh[a];
    return real_part(idft(s));
}

long strip_half_rows(double h, std::size_t n) {
    if (!(h >= 0.0)) throw ModelError("strip half-width must be >= 0");
    return static_cast<long>(std::ceil(h * static_cast<double>(n) - 1e-9));
}

MaskSpec strip_mask(double h, std::size_t n, const LineModelSpec& spec) {
    validate(spec);
    if (!(h >= 0.0) || h >= spec.rho) throw ModelError("strip half-width must satisfy 0 <= h < rho");
    const long c = strip_half_rows(h, n);
    MaskSpec m;
    m.h = h;
    m.indicator = Grid2D(n, true);
    for (std::size_t a = 0; a < n; ++a) {
        if (std::abs(centered(a, n)) > c) continue;
        for (std::size_t b = 0; b < n; ++b) m.indicator(a, b) = 1.0;
    }
    return m;
}

MaskSpec mask_from_indicator(Grid2D indicator) {
    for (auto& v : indicator.values) {
        if (v != cplx(0.0, 0.0) && v != cplx(1.0, 0.0)) throw ModelError("mask indicator must be 0/1 valued");
    }
    MaskSpec m;
    m.h = std::numeric_limits<double>::quiet_NaN();
    indicator.real = true;
    m.indicator = std::move(indicator);
    return m;
}

Grid2D apply_known(const Grid2D& f, const MaskSpec& mask) {
    if (f.n != mask.indicator.n) throw ShapeError("mask size does not match grid");
    Grid2D g = f;
    for (std::size_t i = 0; i < g.values.size(); ++i)
        if (mask.indicator.values[i].real() != 0.0) g.values[i] = 0.0;
    return g;
}

Grid2D apply_missing(const Grid2D& f, const MaskSpec& mask) {
    if (f.n != mask.indicator.n) throw ShapeError("mask size does not match grid");
    Grid2D g = f;
    for (std::size_t i = 0; i < g.values.size(); ++i)
        if (mask.indicator.values[i].real() == 0.0) g.values[i] = 0.0;
    return g;
}

double strip_kernel(double h, std::size_t n, long xi) {
    const long c = strip_half_rows(h, n);
    const double nd = static_cast<double>(n);
    if (2 * c + 1 >= static_cast<long>(n)) {
        // every row of the torus is inside the strip
        return fft_index(xi, n) == 0 ? 1.0 : 0.0;
    }
    const long r = static_cast<long>(fft_index(xi, n));
    if (r == 0) return static_cast<double>(2 * c + 1) / nd;
    const double pi = std::numbers::pi;
    return std::sin(pi * static_cast<double>((2 * c + 1) * r) / nd) / std::sin(pi * static_cast<double>(r) / nd) / nd;
}

double mask_spectrum_check(double h, std::size_t n, std::uint64_t seed) {
    check_grid_size(n);
    const long c = strip_half_rows(h, n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Spectrum2D f(n);
    const long band = static_cast<long>(n) / 4;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (std::abs(centered(a, n)) > band || std::abs(centered(b, n)) > band) continue;
            f.values[a * n + b] = cplx(g(rng), g(rng));
        }
    Grid2D x = idft(f);
    for (std::size_t a = 0; a < n; ++a) {
        if (2 * c + 1 < static_cast<long>(n) && std::abs(centered(a, n)) > c)
            for (std::size_t b = 0; b < n; ++b) x(a, b) = 0.0;
    }
    const Spectrum2D direct = dft(x);
    std::vector<double> kern(n);
    for (std::size_t r = 0; r < n; ++r) kern[r] = strip_kernel(h, n, static_cast<long>(r));
    double worst = 0.0;
    std::vector<cplx> col(n);
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < n; ++a) col[a] = f.values[a * n + b];
        for (std::size_t a = 0; a < n; ++a) {
            cplx acc = 0.0;
            for (std::size_t e = 0; e < n; ++e) {
                if (col[e] == cplx(0.0, 0.0)) continue;
                acc += kern[(a + n - e) % n] * col[e];
            }
            worst = std::max(worst, std::abs(acc - direct.values[a * n + b]));
        }
    }
    return worst;
}

}  // namespace gapfill
