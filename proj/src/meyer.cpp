#include "gapfill/meyer.hpp"

#include <cmath>
#include <numbers>

namespace gapfill {

double nu_ramp(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * x * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x * x * x);
}

double ramp_cos(double v) {
    if (v <= 0.0) return 1.0;
    if (v >= 1.0) return 0.0;
    return std::cos(0.5 * std::numbers::pi * v);
}

double ramp_sin(double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    return std::sin(0.5 * std::numbers::pi * v);
}

cplx meyer_W(double xi) {
    const double a = std::abs(xi);
    const double pi = std::numbers::pi;
    if (a >= 1.0 / 16 && a <= 1.0 / 8)
        return std::polar(ramp_sin(nu_ramp(16.0 * a - 1.0)), -16.0 * pi * xi / 3.0);
    if (a > 1.0 / 8 && a <= 1.0 / 4)
        return std::polar(ramp_cos(nu_ramp(8.0 * a - 1.0)), -8.0 * pi * xi / 3.0);
    return 0.0;
}

double meyer_phi_hat(double xi) {
    const double a = std::abs(xi);
    if (a <= 1.0 / 16) return 1.0;
    if (a <= 1.0 / 8) return ramp_cos(nu_ramp(16.0 * a - 1.0));
    return 0.0;
}

cplx meyer_window(Orient o, double xi1, double xi2) {
    switch (o) {
        case Orient::coarse: return meyer_phi_hat(xi1) * meyer_phi_hat(xi2);
        case Orient::v: return meyer_phi_hat(xi1) * meyer_W(xi2);
        case Orient::h: return meyer_W(xi1) * meyer_phi_hat(xi2);
        case Orient::d: return meyer_W(xi1) * meyer_W(xi2);
        default: throw ArgumentError("not a Meyer orientation");
    }
}

namespace {

void check_scale_fits(int j, std::size_t n) {
    if (std::ldexp(1.0, j) / 4.0 > static_cast<double>(n) / 2.0)
        throw ScaleError("wavelet scale " + std::to_string(j) + " does not fit an n=" + std::to_string(n) + " grid");
}

std::vector<cplx> sampled_window(Orient o, int j, std::size_t n) {
    const double m = std::ldexp(1.0, j);
    std::vector<cplx> w(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        const double x1 = static_cast<double>(centered(a, n)) / m;
        for (std::size_t b = 0; b < n; ++b)
            w[a * n + b] = meyer_window(o, x1, static_cast<double>(centered(b, n)) / m);
    }
    return w;
}

}  // namespace

Spectrum2D wavelet_atom_spectrum(Orient o, int j, std::size_t n) {
    check_grid_size(n);
    check_scale_fits(j, n);
    if (o != Orient::h && o != Orient::v && o != Orient::d) throw ArgumentError("orientation must be h, v or d");
    Spectrum2D s(n);
    s.values = sampled_window(o, j, n);
    const double scale = std::ldexp(1.0, -j);
    for (auto& v : s.values) v *= scale;
    return s;
}

std::shared_ptr<const Frame> meyer_frame(std::size_t n, int jmin, int jmax) {
    check_grid_size(n);
    if (jmin > jmax) throw ArgumentError("empty wavelet scale range");
    if (jmin < 0) throw ArgumentError("negative wavelet scale");
    check_scale_fits(jmax, n);
    std::vector<Band> bands;
    auto modulus = [n](int j) { return std::min<std::size_t>(std::size_t{1} << j, n); };
    {
        const std::size_t m = modulus(jmin);
        bands.push_back(make_band({Orient::coarse, jmin, 0}, n, sampled_window(Orient::coarse, jmin, n), m, m,
                                  1.0 / static_cast<double>(m), +1));
    }
    for (int j = jmin; j <= jmax; ++j) {
        const std::size_t m = modulus(j);
        for (Orient o : {Orient::h, Orient::v, Orient::d})
            bands.push_back(make_band({o, j, 0}, n, sampled_window(o, j, n), m, m, 1.0 / static_cast<double>(m), +1));
    }
    Band res;
    if (residual_band(n, bands, res)) bands.push_back(std::move(res));
    return std::make_shared<const Frame>(FrameKind::meyer, n, std::move(bands));
}

std::shared_ptr<const Frame> meyer_level_frame(std::size_t n, int j) {
    check_grid_size(n);
    if (j < 1) throw ArgumentError("line-model level must be >= 1");
    int top = 2 * j + 2;
    while (top > 2 * j + 1 && std::ldexp(1.0, top) / 4.0 > static_cast<double>(n) / 2.0) --top;
    check_scale_fits(2 * j + 1, n);
    return meyer_frame(n, 2 * j - 1, top);
}

CoefficientSet wavelet_analysis(const Frame& frame, const Grid2D& f) {
    if (frame.kind() != FrameKind::meyer) throw ArgumentError("not a Meyer frame");
    return frame.analyze(f);
}

Grid2D wavelet_synthesis(const Frame& frame, const CoefficientSet& c) {
    if (frame.kind() != FrameKind::meyer) throw ArgumentError("not a Meyer frame");
    return frame.synthesize(c);
}

}  // namespace gapfill
