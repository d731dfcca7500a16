#include "gapfill/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "gapfill/diagnostics.hpp"
#include "gapfill/errors.hpp"
#include "gapfill/meyer.hpp"
#include "gapfill/model.hpp"
#include "gapfill/shearlet.hpp"

namespace gapfill {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

FrameKind parse_frame(const std::string& key, const std::string& v) {
    if (v == "meyer" || v == "wavelet") return FrameKind::meyer;
    if (v == "shearlet") return FrameKind::shearlet;
    throw ConfigError(key, "unknown frame '" + v + "'");
}

Algorithm parse_algorithm(const std::string& key, const std::string& v) {
    if (v == "one_step") return Algorithm::one_step;
    if (v == "iterative") return Algorithm::iterative;
    if (v == "l1") return Algorithm::l1;
    throw ConfigError(key, "unknown algorithm '" + v + "'");
}

Decay parse_decay(const std::string& key, const std::string& v) {
    if (v == "linear") return Decay::linear;
    if (v == "exponential") return Decay::exponential;
    throw ConfigError(key, "decay must be linear or exponential");
}

double max_abs(const RealCoefficients& c) {
    double m = 0.0;
    for (const auto& b : c.bands)
        for (double v : b) m = std::max(m, std::abs(v));
    return m;
}

ThresholdSchedule absolute_schedule(const ThresholdSchedule& frac, double scale) {
    ThresholdSchedule s = frac;
    s.beta_start = frac.beta_start * scale;
    s.beta_end = frac.beta_end * scale;
    return s;
}

int floor_log2(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << (k + 1)) <= n) ++k;
    return k;
}

}  // namespace

const char* frame_name(FrameKind k) { return k == FrameKind::meyer ? "meyer" : "shearlet"; }

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::one_step: return "one_step";
        case Algorithm::iterative: return "iterative";
        case Algorithm::l1: return "l1";
    }
    return "?";
}

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "frames", "algorithms", "j", "h.law", "h.c", "eps.meyer", "eps.shearlet", "rho", "thresh.mode",
        "thresh.q", "l1.max_iter", "l1.tol", "l1.noise_eps", "iter.n", "iter.decay", "iter.beta_start",
        "iter.beta_end", "diag.seed", "diag.coherence_max_n", "diag.probes", "timing", "out", "seed",
        "demo.bars", "demo.zoom", "demo.size"};
    return keys;
}

SweepConfig sweep_config(const Config& c) {
    c.require_known(known_config_keys());
    SweepConfig s;
    s.frames.clear();
    for (const auto& f : c.get_list("frames", {"meyer", "shearlet"})) s.frames.push_back(parse_frame("frames", f));
    s.algorithms.clear();
    for (const auto& a : c.get_list("algorithms", {"one_step", "l1"}))
        s.algorithms.push_back(parse_algorithm("algorithms", a));
    s.js = c.get_int_list("j", {3, 4, 5});
    for (int j : s.js)
        if (j < 2 || j > 6) throw ConfigError("j", "levels must lie in 2..6");

    const std::string law = c.get_string("h.law", "2^-2j");
    if (law == "2^-2j")
        s.h_law = HLaw::per_4j;
    else if (law == "2^-j")
        s.h_law = HLaw::per_2j;
    else if (law == "const")
        s.h_law = HLaw::constant;
    else
        throw ConfigError("h.law", "expected 2^-2j, 2^-j or const");
    s.h_c = c.get_double("h.c", 0.25);
    if (!(s.h_c >= 0.0)) throw ConfigError("h.c", "must be non-negative");

    s.eps_meyer = c.get_double("eps.meyer", 1.0);
    s.eps_shearlet = c.get_double("eps.shearlet", 0.24);
    if (!(s.eps_meyer > 0.0)) throw ConfigError("eps.meyer", "must be positive");
    if (!(s.eps_shearlet > 0.0 && s.eps_shearlet < 0.25)) throw ConfigError("eps.shearlet", "must lie in (0, 1/4)");
    s.rho = c.get_double("rho", 0.35);
    if (!(s.rho > 0.0 && s.rho < 0.5)) throw ConfigError("rho", "must lie in (0, 1/2)");
    for (int j : s.js)
        if (!(mask_half_width(s, j) < s.rho))
            throw ConfigError("h.c", "h_j must stay below rho (fails at j = " + std::to_string(j) + ")");

    const std::string mode = c.get_string("thresh.mode", "oracle");
    if (mode != "oracle" && mode != "quantile") throw ConfigError("thresh.mode", "expected oracle or quantile");
    s.thresh_oracle = mode == "oracle";
    s.thresh_q = c.get_double("thresh.q", 0.90);
    if (!(s.thresh_q > 0.0 && s.thresh_q < 1.0)) throw ConfigError("thresh.q", "must lie in (0, 1)");

    const long max_iter = c.get_long("l1.max_iter", 500);
    if (max_iter < 0) throw ConfigError("l1.max_iter", "must be non-negative");
    s.l1.max_iter = static_cast<std::size_t>(max_iter);
    s.l1.tol = c.get_double("l1.tol", 1e-6);
    if (!(s.l1.tol >= 0.0)) throw ConfigError("l1.tol", "must be non-negative");
    s.l1.noise_eps = c.get_double("l1.noise_eps", 0.0);
    if (!(s.l1.noise_eps >= 0.0)) throw ConfigError("l1.noise_eps", "must be non-negative");

    const long iters = c.get_long("iter.n", 50);
    if (iters < 0) throw ConfigError("iter.n", "must be non-negative");
    s.iter.n_iter = static_cast<std::size_t>(iters);
    s.iter.decay = parse_decay("iter.decay", c.get_string("iter.decay", "exponential"));
    s.iter.beta_start = c.get_double("iter.beta_start", 1.0);
    s.iter.beta_end = c.get_double("iter.beta_end", 0.0);
    if (!(s.iter.beta_end >= 0.0 && s.iter.beta_start >= s.iter.beta_end))
        throw ConfigError("iter.beta_start", "need beta_start >= beta_end >= 0");

    const long cmax = c.get_long("diag.coherence_max_n", 128);
    if (cmax < 0) throw ConfigError("diag.coherence_max_n", "must be non-negative");
    s.coherence_max_n = static_cast<std::size_t>(cmax);

    const std::string timing = c.get_string("timing", "wall");
    if (timing != "wall" && timing != "off") throw ConfigError("timing", "expected wall or off");
    s.timing = timing == "wall";
    s.out_dir = c.get_string("out", ".");
    s.seed = c.get_u64("seed", 1);
    return s;
}

double mask_half_width(const SweepConfig& c, int j) {
    switch (c.h_law) {
        case HLaw::per_4j: return std::ldexp(c.h_c, -2 * j);
        case HLaw::per_2j: return std::ldexp(c.h_c, -j);
        case HLaw::constant: return c.h_c;
    }
    return c.h_c;
}

std::size_t level_grid_size(int j) { return std::size_t{1} << (2 * j + 1); }

std::shared_ptr<const Frame> level_frame(FrameKind kind, int j, std::size_t n) {
    return kind == FrameKind::meyer ? meyer_level_frame(n, j) : shearlet_frame(n, j);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& c, std::ostream* progress) {
    using clock = std::chrono::steady_clock;
    const LineModelSpec spec{c.rho};
    // results[frame][algorithm][j index]
    std::vector<std::vector<std::vector<SweepRecord>>> results(
        c.frames.size(), std::vector<std::vector<SweepRecord>>(c.algorithms.size(), std::vector<SweepRecord>(c.js.size())));

    for (std::size_t fi = 0; fi < c.frames.size(); ++fi) {
        const FrameKind kind = c.frames[fi];
        for (std::size_t ji = 0; ji < c.js.size(); ++ji) {
            const int j = c.js[ji];
            const double h = mask_half_width(c, j);
            for (std::size_t ai = 0; ai < c.algorithms.size(); ++ai) {
                SweepRecord& r = results[fi][ai][ji];
                r.frame = frame_name(kind);
                r.algorithm = algorithm_name(c.algorithms[ai]);
                r.j = j;
                r.h_j = h;
            }
            try {
                const auto setup_start = clock::now();
                const std::size_t n = level_grid_size(j);
                const auto frame = level_frame(kind, j, n);
                const Grid2D x0 = filtered_line_image(spec, j, n);
                const MaskSpec mask = strip_mask(h, n, spec);
                const Grid2D known = apply_known(x0, mask);
                const double eps = kind == FrameKind::meyer ? c.eps_meyer : c.eps_shearlet;
                const ClusterSet cluster = cluster_set(*frame, j, eps, c.rho);
                const double delta = clustered_sparsity_delta(frame->analyze_real(x0), cluster.members);
                const double mass = masked_cluster_mass(cluster.members, mask, x0, *frame);
                const double norm_c = frame_norm_constant(*frame, cluster.members);
                const double mu = n <= c.coherence_max_n ? cluster_coherence(cluster.members, mask, *frame) : nan_v;
                double bound_l1 = nan_v;
                if (!std::isnan(mu)) bound_l1 = error_bounds(delta, mu, c.l1.noise_eps, norm_c, mass).bound_l1;
                const double bound_thresh = norm_c * (mass + delta + c.l1.noise_eps);
                const double setup = std::chrono::duration<double>(clock::now() - setup_start).count();

                for (std::size_t ai = 0; ai < c.algorithms.size(); ++ai) {
                    SweepRecord& r = results[fi][ai][ji];
                    r.delta_j = delta;
                    r.mu_c = mu;
                    r.bound_l1 = bound_l1;
                    r.bound_thresh = bound_thresh;
                    const auto t0 = clock::now();
                    try {
                        Grid2D x;
                        switch (c.algorithms[ai]) {
                            case Algorithm::one_step:
                                if (c.thresh_oracle) {
                                    x = one_step_keep(known, *frame, cluster.members).reconstruction;
                                } else {
                                    const double beta = quantile_threshold(frame->analyze_real(known), c.thresh_q);
                                    x = one_step_threshold(known, *frame, beta).reconstruction;
                                }
                                break;
                            case Algorithm::iterative: {
                                const double top = max_abs(frame->analyze_real(known));
                                x = iterative_threshold_inpaint(known, mask, *frame, absolute_schedule(c.iter, top));
                                break;
                            }
                            case Algorithm::l1: {
                                L1Solution sol = l1_inpaint(known, mask, *frame, c.l1);
                                r.converged = sol.converged;
                                x = std::move(sol.x);
                                break;
                            }
                        }
                        r.relative_error = relative_error(x, x0);
                    } catch (const std::exception& e) {
                        r.relative_error = nan_v;
                        r.converged = false;
                        if (progress) *progress << "  cell failed: " << e.what() << "\n";
                    }
                    r.wall_time =
                        c.timing ? setup + std::chrono::duration<double>(clock::now() - t0).count() : nan_v;
                    if (progress)
                        *progress << r.frame << " " << r.algorithm << " j=" << j << " error "
                                  << format_number(r.relative_error) << "\n"
                                  << std::flush;
                }
            } catch (const std::exception& e) {
                for (std::size_t ai = 0; ai < c.algorithms.size(); ++ai) {
                    SweepRecord& r = results[fi][ai][ji];
                    r.relative_error = r.delta_j = r.mu_c = r.bound_l1 = r.bound_thresh = nan_v;
                    r.converged = false;
                    r.wall_time = c.timing ? 0.0 : nan_v;
                }
                if (progress) *progress << frame_name(kind) << " j=" << j << " failed: " << e.what() << "\n";
            }
        }
    }
    std::vector<SweepRecord> out;
    for (auto& per_frame : results)
        for (auto& per_alg : per_frame)
            for (auto& r : per_alg) out.push_back(std::move(r));
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& os) {
    os << "frame,algorithm,j,h_j,relative_error,delta_j,mu_c,bound_l1,bound_thresh,converged,wall_time\n";
    for (const auto& r : rows) {
        os << r.frame << ',' << r.algorithm << ',' << r.j << ',' << format_number(r.h_j) << ','
           << format_number(r.relative_error) << ',' << format_number(r.delta_j) << ',' << format_number(r.mu_c)
           << ',' << format_number(r.bound_l1) << ',' << format_number(r.bound_thresh) << ','
           << (r.converged ? "true" : "false") << ',' << format_number(r.wall_time) << '\n';
    }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(is, line)) throw FormatError("empty sweep file", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "frame,algorithm,j,h_j,relative_error,delta_j,mu_c,bound_l1,bound_thresh,converged,wall_time")
        throw FormatError("unexpected sweep header", 1);
    auto number = [&](const std::string& s) {
        if (s == "nan") return nan_v;
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw FormatError("bad number '" + s + "'", lineno);
        }
        if (used != s.size()) throw FormatError("bad number '" + s + "'", lineno);
        return v;
    };
    std::vector<SweepRecord> rows;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        if (!line.empty() && line.back() == ',') f.push_back("");
        if (f.size() != 11) throw FormatError("expected 11 fields, got " + std::to_string(f.size()), lineno);
        SweepRecord r;
        r.frame = f[0];
        r.algorithm = f[1];
        const double j = number(f[2]);
        if (j != std::floor(j)) throw FormatError("level must be an integer", lineno);
        r.j = static_cast<int>(j);
        r.h_j = number(f[3]);
        r.relative_error = number(f[4]);
        r.delta_j = number(f[5]);
        r.mu_c = number(f[6]);
        r.bound_l1 = number(f[7]);
        r.bound_thresh = number(f[8]);
        if (f[9] != "true" && f[9] != "false") throw FormatError("converged must be true or false", lineno);
        r.converged = f[9] == "true";
        r.wall_time = number(f[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void plot_sweep(const std::string& csv_path, const std::string& svg_path) {
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot read " + csv_path);
    const auto rows = read_sweep_csv(in);
    std::ofstream out(svg_path);
    if (!out) throw IoError("cannot write " + svg_path);
    out << render_sweep_svg(rows);
    if (!out) throw IoError("write failed: " + svg_path);
}

Grid2D image_grid(const GrayImage& img) {
    if (img.width != img.height || !is_pow2(img.width) || img.width < 16)
        throw SizeError("demo image must be square with a power-of-two side >= 16");
    Grid2D g(img.width, true);
    const double scale = 255.0 / img.maxval;
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = img.pixels[i] * scale;
    return g;
}

Grid2D seismic_image(std::size_t n, std::uint64_t seed) {
    check_grid_size(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    struct Reflector {
        double depth, slope, amp, freq, phase, strength;
    };
    std::vector<Reflector> refl;
    for (int k = 0; k < 7; ++k)
        refl.push_back({0.1 + 0.8 * u(rng), 0.3 * (u(rng) - 0.5), 0.05 * u(rng), 0.5 + 1.5 * u(rng),
                        2.0 * std::numbers::pi * u(rng), (u(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 0.5 * u(rng))});
    const double width = 1.5 / static_cast<double>(n) * 2.0;
    Grid2D g(n, true);
    for (std::size_t r = 0; r < n; ++r) {
        const double x1 = static_cast<double>(r) / static_cast<double>(n);
        for (std::size_t c = 0; c < n; ++c) {
            const double x2 = static_cast<double>(c) / static_cast<double>(n);
            double v = 0.0;
            for (const auto& f : refl) {
                const double centre = f.depth + f.slope * (x2 - 0.5) + f.amp * std::sin(2.0 * std::numbers::pi * f.freq * x2 + f.phase);
                const double t = (x1 - centre) / width;
                v += f.strength * (1.0 - 2.0 * t * t) * std::exp(-t * t);
            }
            g(r, c) = std::clamp(128.0 + 80.0 * v, 0.0, 255.0);
        }
    }
    return g;
}

MaskSpec bar_mask(std::size_t n, const std::vector<Bar>& bars) {
    Grid2D ind(n, true);
    const long ln = static_cast<long>(n);
    for (const auto& b : bars) {
        if (b.half_width < 0) throw ArgumentError("bar half width must be non-negative");
        if (b.center - b.half_width < 0 || b.center + b.half_width > ln) throw ArgumentError("bar leaves the image");
        for (long col = b.center - b.half_width; col < b.center + b.half_width; ++col)
            for (std::size_t r = 0; r < n; ++r) ind(r, static_cast<std::size_t>(col)) = 1.0;
    }
    return mask_from_indicator(std::move(ind));
}

double masked_psnr(const Grid2D& x, const Grid2D& ref, const MaskSpec& mask) {
    double se = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        if (mask.indicator.values[i].real() == 0.0) continue;
        se += std::norm(x.values[i] - ref.values[i]);
        ++count;
    }
    if (count == 0 || se == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / (se / static_cast<double>(count)));
}

std::shared_ptr<const Frame> image_frame(FrameKind kind, std::size_t n) {
    check_grid_size(n);
    const int lg = floor_log2(n);
    if (kind == FrameKind::meyer) return meyer_frame(n, 3, lg + 1);
    return shearlet_frame(n, lg / 2);
}

std::vector<DemoRow> run_demo(const Grid2D& image, const std::vector<Bar>& bars, const DemoOptions& opts,
                              const std::string& out_dir) {
    const std::size_t n = image.n;
    std::filesystem::create_directories(out_dir);
    const MaskSpec mask = bar_mask(n, bars);
    const Grid2D known = apply_known(image, mask);
    const auto path = [&](const std::string& name) { return (std::filesystem::path(out_dir) / name).string(); };
    const std::pair<double, double> range{0.0, 255.0};

    // zoom window centred on the first bar
    const std::size_t zw = std::min(opts.zoom, n);
    const long zc = bars.empty() ? static_cast<long>(n / 2) : bars.front().center;
    const long z0 = std::clamp(zc - static_cast<long>(zw / 2), 0L, static_cast<long>(n - zw));
    const long r0 = static_cast<long>((n - zw) / 2);
    auto zoom = [&](const Grid2D& g, const std::string& name) {
        std::vector<double> v(zw * zw);
        for (std::size_t r = 0; r < zw; ++r)
            for (std::size_t c = 0; c < zw; ++c) v[r * zw + c] = g(r0 + r, z0 + c).real();
        export_pgm(v, zw, zw, path(name), range);
    };

    export_pgm(image, path("original.pgm"), range);
    export_pgm(known, path("masked.pgm"), range);
    zoom(image, "zoom_original.pgm");
    zoom(known, "zoom_masked.pgm");

    std::vector<DemoRow> rows;
    for (FrameKind kind : {FrameKind::meyer, FrameKind::shearlet}) {
        const auto frame = image_frame(kind, n);
        const double top = max_abs(frame->analyze_real(known));
        Grid2D x = iterative_threshold_inpaint(known, mask, *frame, absolute_schedule(opts.schedule, top));
        const std::string name = kind == FrameKind::meyer ? "wavelet" : "shearlet";
        Grid2D shown = x;
        for (auto& v : shown.values) v = std::clamp(v.real(), 0.0, 255.0);
        export_pgm(shown, path(name + ".pgm"), range);
        zoom(shown, "zoom_" + name + ".pgm");
        rows.push_back({name, masked_psnr(x, image, mask)});
    }
    std::ofstream rep(path("psnr.csv"));
    if (!rep) throw IoError("cannot write " + path("psnr.csv"));
    rep << "frame,psnr_db\n";
    for (const auto& r : rows) rep << r.frame << ',' << format_number(r.psnr) << '\n';
    return rows;
}

std::vector<DemoRow> run_demo(const std::string& image_path, const std::vector<Bar>& bars, const DemoOptions& opts,
                              const std::string& out_dir) {
    return run_demo(image_grid(read_pgm(image_path)), bars, opts, out_dir);
}

DemoOptions demo_options(const Config& c) {
    c.require_known(known_config_keys());
    DemoOptions o;
    const long iters = c.get_long("iter.n", 50);
    if (iters < 0) throw ConfigError("iter.n", "must be non-negative");
    o.schedule.n_iter = static_cast<std::size_t>(iters);
    o.schedule.decay = parse_decay("iter.decay", c.get_string("iter.decay", "exponential"));
    o.schedule.beta_start = c.get_double("iter.beta_start", 1.0);
    o.schedule.beta_end = c.get_double("iter.beta_end", 0.0);
    if (!(o.schedule.beta_end >= 0.0 && o.schedule.beta_start >= o.schedule.beta_end))
        throw ConfigError("iter.beta_start", "need beta_start >= beta_end >= 0");
    const long zoom = c.get_long("demo.zoom", 64);
    if (zoom < 1) throw ConfigError("demo.zoom", "must be positive");
    o.zoom = static_cast<std::size_t>(zoom);
    return o;
}

double tiling_deviation(FrameKind kind, std::size_t n) {
    const auto frame = image_frame(kind, n);
    const int lg = floor_log2(n);
    // radius below which the instantiated scales telescope to 1
    const long radius = kind == FrameKind::meyer ? (1L << (lg + 1 - 3)) : (1L << (2 * (lg / 2) - 2));
    std::vector<double> sum(n * n, 0.0);
    for (const auto& b : frame->bands()) {
        if (b.key.orient == Orient::residual) continue;
        const double scale = static_cast<double>(b.m1 * b.m2) * b.norm * b.norm;
        for (std::size_t p = 0; p < b.freq.size(); ++p) sum[b.freq[p]] += std::norm(b.win[p]) * scale;
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        const long x1 = centered(i / n, n), x2 = centered(i % n, n);
        if (std::max(std::abs(x1), std::abs(x2)) > radius) continue;
        dev = std::max(dev, std::abs(sum[i] - 1.0));
    }
    return dev;
}

ParsevalReport parseval_check(FrameKind kind, std::size_t n, std::size_t trials, std::uint64_t seed) {
    const auto frame = image_frame(kind, n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ParsevalReport rep;
    for (std::size_t t = 0; t < trials; ++t) {
        const bool real = t % 2 == 1;
        Grid2D f(n, real);
        for (auto& v : f.values) v = real ? cplx(gauss(rng), 0.0) : cplx(gauss(rng), gauss(rng));
        const double fn = f.norm();
        double cn;
        Grid2D r;
        if (real) {
            const RealCoefficients c = frame->analyze_real(f);
            cn = c.l2_norm();
            r = frame->synthesize_real(c);
        } else {
            const CoefficientSet c = frame->analyze(f);
            cn = c.l2_norm();
            r = frame->synthesize(c);
        }
        double d = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) d += std::norm(r.values[i] - f.values[i]);
        d = std::sqrt(d) / static_cast<double>(n);
        rep.max_norm_dev = std::max(rep.max_norm_dev, std::abs(cn / fn - 1.0));
        rep.max_recon_err = std::max(rep.max_recon_err, d / fn);
    }
    return rep;
}

}  // namespace gapfill
