#include "gapfill/shearlet.hpp"

#include <cmath>
#include <numbers>

#include "gapfill/meyer.hpp"

namespace gapfill {

double bump_V(double x) {
    const double a = std::abs(x);
    if (a > 1.0) return 0.0;
    return ramp_cos(nu_ramp(a));
}

double corona_window(double xi1, double xi2) {
    const double outer = meyer_phi_hat(xi1 / 4.0) * meyer_phi_hat(xi2 / 4.0);
    const double inner = meyer_phi_hat(xi1) * meyer_phi_hat(xi2);
    const double d = outer * outer - inner * inner;
    return d > 0.0 ? std::sqrt(d) : 0.0;
}

namespace {

double ratio_window(double num, double den, int j, int ell) {
    if (den == 0.0) return 0.0;
    return bump_V(std::ldexp(num / den, j) - ell);
}

double cone_part(Orient cone, int j, int ell, double xi1, double xi2) {
    switch (cone) {
        case Orient::h: return ratio_window(xi2, xi1, j, ell);
        case Orient::v: return ratio_window(xi1, xi2, j, ell);
        case Orient::seam:
            return std::abs(xi2) <= std::abs(xi1) ? ratio_window(xi2, xi1, j, ell) : ratio_window(xi1, xi2, j, ell);
        default: throw ArgumentError("cone must be h, v or seam");
    }
}

void check_seam(int j, int ell) {
    const int edge = j == 0 ? 1 : (1 << j);
    if (std::abs(ell) != edge) throw ArgumentError("seam shear must be +-2^j");
}

void check_corona_fits(int j, std::size_t n) {
    if (j < 0) throw ArgumentError("negative shearlet level");
    if (std::ldexp(1.0, 2 * j - 1) > static_cast<double>(n) / 2.0)
        throw ScaleError("corona " + std::to_string(j) + " does not fit an n=" + std::to_string(n) + " grid");
}

double seam_norm(int j) { return j == 0 ? 1.0 : std::ldexp(1.0, -j) / std::sqrt(std::ldexp(1.0, j)) / 2.0; }

}  // namespace

double shearlet_window(Orient cone, int j, int ell, double xi1, double xi2) {
    if (cone == Orient::seam) check_seam(j, ell);
    const double s = std::ldexp(1.0, -2 * j);
    const double w = corona_window(xi1 * s, xi2 * s);
    if (w == 0.0) return 0.0;
    return w * cone_part(cone, j, ell, xi1, xi2);
}

std::pair<std::size_t, std::size_t> shearlet_moduli(Orient cone, int j) {
    const std::size_t fine = std::size_t{1} << (2 * j), coarse = std::size_t{1} << j;
    switch (cone) {
        case Orient::coarse: return {1, 1};
        case Orient::h: return {fine, coarse};
        case Orient::v: return {coarse, fine};
        case Orient::seam: return j == 0 ? std::pair<std::size_t, std::size_t>{1, 1}
                                         : std::pair<std::size_t, std::size_t>{2 * fine, 2 * coarse};
        default: throw ArgumentError("not a shearlet cone");
    }
}

Spectrum2D shearlet_atom_spectrum(const ShearletIndex& idx, std::size_t n) {
    check_grid_size(n);
    Spectrum2D s(n);
    const double pi = std::numbers::pi;
    if (idx.cone == Orient::coarse) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const double x1 = static_cast<double>(centered(a, n)), x2 = static_cast<double>(centered(b, n));
                const double w = meyer_phi_hat(x1) * meyer_phi_hat(x2);
                if (w != 0.0) s.values[a * n + b] = std::polar(w, 2 * pi * (x1 * idx.k1 + x2 * idx.k2));
            }
        return s;
    }
    check_corona_fits(idx.j, n);
    if (idx.cone == Orient::seam) check_seam(idx.j, idx.ell);
    else if (std::abs(idx.ell) >= (1 << idx.j)) throw ArgumentError("interior shear must satisfy |ell| < 2^j");
    const double f4 = std::ldexp(1.0, -2 * idx.j), f2 = std::ldexp(1.0, -idx.j);
    double norm;
    double phase_scale = 2 * pi;
    if (idx.cone == Orient::seam) {
        norm = seam_norm(idx.j);
        if (idx.j > 0) phase_scale = pi;
    } else {
        norm = std::ldexp(1.0, -idx.j) / std::sqrt(std::ldexp(1.0, idx.j));
    }
    for (std::size_t a = 0; a < n; ++a) {
        const double x1 = static_cast<double>(centered(a, n));
        for (std::size_t b = 0; b < n; ++b) {
            const double x2 = static_cast<double>(centered(b, n));
            const double w = shearlet_window(idx.cone, idx.j, idx.ell, x1, x2);
            if (w == 0.0) continue;
            double ph;
            if (idx.j == 0 && idx.cone == Orient::seam)
                ph = x1 * idx.k1 + x2 * idx.k2;
            else if (idx.cone == Orient::v)
                ph = x1 * idx.k1 * f2 + x2 * (idx.k2 - idx.ell * idx.k1) * f4;
            else
                ph = x1 * (idx.k1 - idx.ell * idx.k2) * f4 + x2 * idx.k2 * f2;
            s.values[a * n + b] = std::polar(norm * w, phase_scale * ph);
        }
    }
    return s;
}

std::shared_ptr<const Frame> shearlet_frame(std::size_t n, int jmax) {
    check_grid_size(n);
    check_corona_fits(jmax, n);
    std::vector<Band> bands;
    {
        std::vector<cplx> w(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                w[a * n + b] = meyer_phi_hat(static_cast<double>(centered(a, n))) *
                               meyer_phi_hat(static_cast<double>(centered(b, n)));
        bands.push_back(make_band({Orient::coarse, 0, 0}, n, w, 1, 1, 1.0, -1));
    }
    auto capped = [n](std::size_t m) { return std::min(m, n); };
    for (int j = 0; j <= jmax; ++j) {
        const int L = 1 << j;
        const int seam_ell = j == 0 ? 1 : L;
        // support lists per (cone, shear): h shears -L+1..L-1, v likewise, then the two seams
        const int nint = 2 * L - 1;
        std::vector<std::vector<std::uint32_t>> freq(2 * nint + 2);
        std::vector<std::vector<cplx>> win(2 * nint + 2);
        const double s = std::ldexp(1.0, -2 * j);
        for (std::size_t a = 0; a < n; ++a) {
            const double x1 = static_cast<double>(centered(a, n));
            for (std::size_t b = 0; b < n; ++b) {
                const double x2 = static_cast<double>(centered(b, n));
                const double w = corona_window(x1 * s, x2 * s);
                if (w == 0.0) continue;
                const auto idx = static_cast<std::uint32_t>(a * n + b);
                auto add = [&](std::size_t slot, double v) {
                    if (v == 0.0) return;
                    freq[slot].push_back(idx);
                    win[slot].push_back(w * v);
                };
                const bool hcone = std::abs(x2) <= std::abs(x1);
                const double r = hcone ? std::ldexp(x2 / x1, j) : std::ldexp(x1 / x2, j);
                const int lo = static_cast<int>(std::floor(r)) - 1, hi = static_cast<int>(std::ceil(r)) + 1;
                // Only shears within one unit of the point's own cone ratio can be
                // nonzero; the other cone's ratio is >= 2^j in magnitude here.
                for (int ell = std::max(lo, -L + 1); ell <= std::min(hi, L - 1); ++ell) {
                    add(static_cast<std::size_t>(ell + L - 1), ratio_window(x2, x1, j, ell));
                    add(static_cast<std::size_t>(nint + ell + L - 1), ratio_window(x1, x2, j, ell));
                }
                add(2 * nint, cone_part(Orient::seam, j, -seam_ell, x1, x2));
                add(2 * nint + 1, cone_part(Orient::seam, j, seam_ell, x1, x2));
            }
        }
        for (int ell = -L + 1; ell < L; ++ell) {
            auto [m1, m2] = shearlet_moduli(Orient::h, j);
            const std::size_t slot = static_cast<std::size_t>(ell + L - 1);
            m1 = capped(m1);
            m2 = capped(m2);
            const double nm = 1.0 / std::sqrt(static_cast<double>(m1 * m2));
            bands.push_back(make_band({Orient::h, j, ell}, n, freq[slot], win[slot], m1, m2, nm, -1));
        }
        for (int ell = -L + 1; ell < L; ++ell) {
            auto [m1, m2] = shearlet_moduli(Orient::v, j);
            const std::size_t slot = static_cast<std::size_t>(nint + ell + L - 1);
            m1 = capped(m1);
            m2 = capped(m2);
            const double nm = 1.0 / std::sqrt(static_cast<double>(m1 * m2));
            bands.push_back(make_band({Orient::v, j, ell}, n, freq[slot], win[slot], m1, m2, nm, -1));
        }
        for (int side = 0; side < 2; ++side) {
            auto [m1, m2] = shearlet_moduli(Orient::seam, j);
            m1 = capped(m1);
            m2 = capped(m2);
            const double nm = j == 0 ? 1.0 : 1.0 / std::sqrt(static_cast<double>(m1 * m2));
            const int ell = side == 0 ? -seam_ell : seam_ell;
            bands.push_back(make_band({Orient::seam, j, ell}, n, freq[2 * nint + side], win[2 * nint + side], m1,
                                      m2, nm, -1));
        }
    }
    Band res;
    if (residual_band(n, bands, res)) bands.push_back(std::move(res));
    return std::make_shared<const Frame>(FrameKind::shearlet, n, std::move(bands));
}

CoefficientSet shearlet_analysis(const Frame& frame, const Grid2D& f) {
    if (frame.kind() != FrameKind::shearlet) throw ArgumentError("not a shearlet frame");
    return frame.analyze(f);
}

Grid2D shearlet_synthesis(const Frame& frame, const CoefficientSet& c) {
    if (frame.kind() != FrameKind::shearlet) throw ArgumentError("not a shearlet frame");
    return frame.synthesize(c);
}

std::pair<std::size_t, std::size_t> shearlet_lattice_index(const Band& band, long k1, long k2) {
    const int ell = band.key.shear;
    long u1 = k1, u2 = k2;
    switch (band.key.orient) {
        case Orient::h: u1 = k1 - ell * k2; break;
        case Orient::v: u2 = k2 - ell * k1; break;
        case Orient::seam:
            if (band.key.scale > 0) u1 = k1 - ell * k2;
            break;
        default: break;
    }
    const long m1 = static_cast<long>(band.m1), m2 = static_cast<long>(band.m2);
    return {static_cast<std::size_t>(((u1 % m1) + m1) % m1), static_cast<std::size_t>(((u2 % m2) + m2) % m2)};
}

cplx continuous_shearlet_coeff(const Spectrum2D& f, double a, double s, double t1, double t2, Orient cone) {
    if (!(a > 0.0) || a > 1.0) throw ScaleError("shearlet scale a must lie in (0, 1]");
    // corona of a: |xi|_inf <= 1/(2 a^2) must fit the grid
    if (0.5 / (a * a) > static_cast<double>(f.n) / 2.0 + 1e-12) throw ScaleError("scale too fine for the grid");
    if (cone != Orient::h && cone != Orient::v && cone != Orient::seam)
        throw ArgumentError("cone must be h, v or seam");
    const double pi = std::numbers::pi;
    double norm = std::pow(a, 1.5);
    if (cone == Orient::seam) norm /= 2.0;
    const std::size_t n = f.n;
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x1 = static_cast<double>(centered(i, n));
        for (std::size_t k = 0; k < n; ++k) {
            const cplx fv = f.values[i * n + k];
            if (fv == cplx(0.0, 0.0)) continue;
            const double x2 = static_cast<double>(centered(k, n));
            const double w = corona_window(a * a * x1, a * a * x2);
            if (w == 0.0) continue;
            double v;
            const bool hside = cone == Orient::h || (cone == Orient::seam && std::abs(x2) <= std::abs(x1));
            if (hside)
                v = x1 == 0.0 ? 0.0 : bump_V(x2 / (a * x1) - s);
            else
                v = x2 == 0.0 ? 0.0 : bump_V(x1 / (a * x2) - s);
            if (v == 0.0) continue;
            acc += fv * std::polar(norm * w * v, 2 * pi * (x1 * t1 + x2 * t2));
        }
    }
    return acc;
}

}  // namespace gapfill
