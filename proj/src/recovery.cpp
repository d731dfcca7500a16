#include "gapfill/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapfill/errors.hpp"

namespace gapfill {

namespace {

void require_real(const Grid2D& g, const char* what) {
    if (!g.real) throw TypeError(std::string(what) + " must be a real grid");
}

void check_mask(const IndexMask& keep, const Frame& frame) {
    const auto& bands = frame.bands();
    if (keep.size() != bands.size()) throw ShapeError("index mask has wrong band count");
    for (std::size_t i = 0; i < bands.size(); ++i)
        if (keep[i].size() != bands[i].size()) throw ShapeError("index mask lattice size mismatch");
}

double sum_sq(const Grid2D& g) {
    double s = 0.0;
    for (const auto& v : g.values) s += std::norm(v);
    return s;
}

// Projection onto {x : ||(1 - M)(x - f)|| <= eps}; eps = 0 overwrites the known samples.
void project_known(Grid2D& x, const Grid2D& f_known, const MaskSpec& mask, double eps) {
    const auto& ind = mask.indicator.values;
    if (eps <= 0.0) {
        for (std::size_t i = 0; i < x.values.size(); ++i)
            if (ind[i].real() == 0.0) x.values[i] = f_known.values[i];
        return;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        if (ind[i].real() == 0.0) s += std::norm(x.values[i] - f_known.values[i]);
    const double nd = static_cast<double>(x.n);
    const double dist = std::sqrt(s) / nd;
    if (dist <= eps) return;
    const double scale = eps / dist;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        if (ind[i].real() == 0.0) x.values[i] = f_known.values[i] + scale * (x.values[i] - f_known.values[i]);
}

}  // namespace

ThresholdOutcome one_step_threshold(const Grid2D& x, const Frame& frame, double beta) {
    if (!(beta >= 0.0)) throw ArgumentError("threshold must be non-negative");
    require_real(x, "threshold input");
    RealCoefficients c = frame.analyze_real(x);
    ThresholdOutcome out;
    out.beta = beta;
    out.kept.resize(c.bands.size());
    for (std::size_t b = 0; b < c.bands.size(); ++b) {
        auto& band = c.bands[b];
        auto& keep = out.kept[b];
        keep.assign(band.size(), 0);
        for (std::size_t i = 0; i < band.size(); ++i) {
            if (std::abs(band[i]) >= beta) {
                keep[i] = 1;
                ++out.kept_count;
            } else {
                band[i] = 0.0;
            }
        }
    }
    out.reconstruction = frame.synthesize_real(c);
    return out;
}

ThresholdOutcome one_step_keep(const Grid2D& x, const Frame& frame, const IndexMask& keep) {
    require_real(x, "threshold input");
    check_mask(keep, frame);
    std::vector<std::uint8_t> which(keep.size(), 0);
    for (std::size_t b = 0; b < keep.size(); ++b)
        which[b] = std::any_of(keep[b].begin(), keep[b].end(), [](std::uint8_t k) { return k != 0; });
    RealCoefficients c = frame.analyze_real(real_dft(x), which);
    ThresholdOutcome out;
    out.beta = std::numeric_limits<double>::quiet_NaN();
    out.kept = keep;
    for (std::size_t b = 0; b < c.bands.size(); ++b) {
        auto& band = c.bands[b];
        for (std::size_t i = 0; i < band.size(); ++i) {
            if (keep[b][i])
                ++out.kept_count;
            else
                band[i] = 0.0;
        }
    }
    out.reconstruction = frame.synthesize_real(c);
    return out;
}

double quantile_threshold(std::vector<double> magnitudes, double q) {
    if (!(q > 0.0 && q < 1.0)) throw ArgumentError("quantile must lie in (0, 1)");
    std::erase_if(magnitudes, [](double v) { return v == 0.0; });
    if (magnitudes.empty()) return 0.0;
    for (auto& v : magnitudes) v = std::abs(v);
    std::sort(magnitudes.begin(), magnitudes.end());
    const double pos = q * static_cast<double>(magnitudes.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return magnitudes[lo] + frac * (magnitudes[hi] - magnitudes[lo]);
}

double quantile_threshold(const RealCoefficients& c, double q) {
    std::vector<double> m;
    m.reserve(c.count());
    for (const auto& b : c.bands) m.insert(m.end(), b.begin(), b.end());
    return quantile_threshold(std::move(m), q);
}

L1Solution l1_inpaint(const Grid2D& f_known, const MaskSpec& mask, const Frame& frame, const L1Options& opts) {
    require_real(f_known, "known data");
    if (f_known.n != frame.n() || mask.indicator.n != frame.n()) throw ShapeError("grid, mask and frame sizes differ");
    if (!(opts.tol >= 0.0) || !(opts.noise_eps >= 0.0)) throw ArgumentError("tolerances must be non-negative");

    L1Solution sol;
    Grid2D x = apply_known(f_known, mask);
    project_known(x, f_known, mask, 0.0);
    RealCoefficients a = frame.analyze_real(x);  // Phi^* x
    RealCoefficients b = a;                      // Phi^* xbar
    RealCoefficients y = frame.real_zeros();
    Grid2D xbar;
    // Dual bound 1/n: unit steps then act like the pixel-sum inner product,
    // whose coefficients are n times ours.
    const double bound = 1.0 / static_cast<double>(frame.n());

    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        for (std::size_t k = 0; k < y.bands.size(); ++k) {
            auto& yb = y.bands[k];
            const auto& bb = b.bands[k];
            for (std::size_t i = 0; i < yb.size(); ++i) yb[i] = std::clamp(yb[i] + bb[i], -bound, bound);
        }
        Grid2D xn = frame.synthesize_real(y);
        for (std::size_t i = 0; i < xn.values.size(); ++i) xn.values[i] = x.values[i] - xn.values[i];
        project_known(xn, f_known, mask, opts.noise_eps);

        double diff = 0.0;
        xbar = xn;
        for (std::size_t i = 0; i < xn.values.size(); ++i) {
            const double d = xn.values[i].real() - x.values[i].real();
            diff += d * d;
            xbar.values[i] = xn.values[i].real() + d;
        }
        const double scale = std::max(sum_sq(xn), std::numeric_limits<double>::min());
        sol.primal_residual = std::sqrt(diff / scale);
        if (diff == 0.0) sol.primal_residual = 0.0;

        b = frame.analyze_real(xbar);
        for (std::size_t k = 0; k < a.bands.size(); ++k) {
            auto& ab = a.bands[k];
            const auto& bb = b.bands[k];
            for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = 0.5 * (ab[i] + bb[i]);
        }
        sol.objective_trace.push_back(a.l1_norm());
        x = std::move(xn);
        sol.iterations = it + 1;
        if (sol.primal_residual < opts.tol) {
            sol.converged = true;
            break;
        }
    }
    if (opts.max_iter == 0) sol.objective_trace.push_back(a.l1_norm());
    sol.x = std::move(x);
    return sol;
}

double schedule_beta(const ThresholdSchedule& s, std::size_t t) {
    if (s.n_iter <= 1 || t == 0) return s.beta_start;
    if (t >= s.n_iter - 1 && s.decay == Decay::exponential && s.beta_end == 0.0) return 0.0;
    const double frac = static_cast<double>(std::min(t, s.n_iter - 1)) / static_cast<double>(s.n_iter - 1);
    if (s.decay == Decay::linear) return s.beta_start + (s.beta_end - s.beta_start) * frac;
    if (s.beta_start == 0.0) return 0.0;
    if (s.beta_end > 0.0) return s.beta_start * std::pow(s.beta_end / s.beta_start, frac);
    // geometric down to 1e-3 beta_start over the first n_iter - 1 steps
    const double f2 = static_cast<double>(t) / static_cast<double>(s.n_iter - 2 > 0 ? s.n_iter - 2 : 1);
    return s.beta_start * std::pow(1e-3, std::min(f2, 1.0));
}

Grid2D iterative_threshold_inpaint(const Grid2D& f_known, const MaskSpec& mask, const Frame& frame,
                                   const ThresholdSchedule& schedule) {
    require_real(f_known, "known data");
    if (!(schedule.beta_end >= 0.0) || !(schedule.beta_start >= schedule.beta_end))
        throw ArgumentError("schedule needs beta_start >= beta_end >= 0");
    if (f_known.n != frame.n() || mask.indicator.n != frame.n()) throw ShapeError("grid, mask and frame sizes differ");
    const Grid2D known = apply_known(f_known, mask);
    Grid2D x = known;
    const auto& ind = mask.indicator.values;
    for (std::size_t t = 0; t < schedule.n_iter; ++t) {
        const double beta = schedule_beta(schedule, t);
        RealCoefficients c = frame.analyze_real(x);
        for (auto& band : c.bands)
            for (auto& v : band)
                if (std::abs(v) < beta) v = 0.0;
        Grid2D y = frame.synthesize_real(c);
        for (std::size_t i = 0; i < x.values.size(); ++i)
            x.values[i] = ind[i].real() != 0.0 ? y.values[i] : known.values[i];
    }
    return x;
}

double relative_error(const Grid2D& x, const Grid2D& x0) {
    if (x.n != x0.n) throw ShapeError("grids differ in size");
    const double ref = sum_sq(x0);
    if (ref == 0.0) throw ArgumentError("relative error against a zero reference");
    double d = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i) d += std::norm(x.values[i] - x0.values[i]);
    return std::sqrt(d / ref);
}

}  // namespace gapfill
