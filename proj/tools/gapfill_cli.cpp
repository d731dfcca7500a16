#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gapfill/config.hpp"
#include "gapfill/diagnostics.hpp"
#include "gapfill/errors.hpp"
#include "gapfill/harness.hpp"
#include "gapfill/model.hpp"

using namespace gapfill;

namespace {

Bar parse_bar(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("demo.bars", "bar '" + s + "' is not center:half_width");
    try {
        return {std::stol(s.substr(0, colon)), std::stol(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ConfigError("demo.bars", "bar '" + s + "' is not center:half_width");
    }
}

std::string out_path(const Config& cfg, const std::string& name) {
    const std::string dir = cfg.get_string("out", ".");
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inpainting of line singularities with wavelet and shearlet Parseval frames"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed");

    auto* tiling = app.add_subcommand("tiling-check", "partition of unity of both frames");
    std::size_t tiling_n = 256;
    tiling->add_option("--n", tiling_n, "grid size");

    auto* parseval = app.add_subcommand("parseval-check", "tightness on random inputs");
    std::size_t parseval_n = 64, trials = 100;
    parseval->add_option("--n", parseval_n, "grid size");
    parseval->add_option("--trials", trials, "number of random inputs");

    auto* sweep = app.add_subcommand("sweep", "recovery error over levels j, written as CSV");
    std::string csv_name = "sweep.csv";
    bool quiet = false;
    sweep->add_option("--csv", csv_name, "file name inside the output directory");
    sweep->add_flag("--quiet", quiet, "no progress lines");

    auto* demo = app.add_subcommand("demo", "iterative thresholding on an image with missing columns");
    std::string image;
    std::vector<std::string> bars;
    std::size_t demo_size = 256;
    demo->add_option("image", image, "square power-of-two PGM; a synthetic section if omitted");
    demo->add_option("--bar", bars, "missing columns as center:half_width (repeatable)");
    demo->add_option("--size", demo_size, "side of the synthetic image");

    auto* coherence = app.add_subcommand("coherence", "delta, cluster coherence and bounds for one instance");
    std::string coh_frame = "shearlet";
    int coh_j = 2;
    std::size_t coh_n = 0;
    double coh_h = -1.0;
    std::size_t probes = 8;
    coherence->add_option("--frame", coh_frame, "meyer or shearlet");
    coherence->add_option("--j", coh_j, "level");
    coherence->add_option("--n", coh_n, "grid size (default 2^{2j+1})");
    coherence->add_option("--half-width", coh_h, "strip half-width (default from the config h-law)");
    coherence->add_option("--probes", probes, "random probes for the concentration estimate");

    auto* portrait = app.add_subcommand("portrait", "continuous shearlet magnitude over position and shear");
    int por_j = 3;
    double por_h = -1.0;
    std::size_t shears = 33;
    std::size_t t_samples = 128;
    portrait->add_option("--j", por_j, "level");
    portrait->add_option("--half-width", por_h, "strip half-width; negative for the unmasked image");
    portrait->add_option("--shears", shears, "number of shear samples in [-1, 1]");
    portrait->add_option("--t-samples", t_samples, "number of translation samples in [-1/2, 1/2)");

    auto* plot = app.add_subcommand("plot", "SVG of a sweep CSV");
    std::string plot_csv, plot_svg;
    plot->add_option("csv", plot_csv, "sweep CSV")->required();
    plot->add_option("--svg", plot_svg, "output file (default: csv name with .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
        if (!out_dir.empty()) cfg.set("out", out_dir);
        if (app.count("--seed")) cfg.set("seed", std::to_string(seed));
        const SweepConfig sc = sweep_config(cfg);

        if (*tiling) {
            bool ok = true;
            for (FrameKind k : {FrameKind::meyer, FrameKind::shearlet}) {
                const double dev = tiling_deviation(k, tiling_n);
                std::printf("%s n=%zu max |sum - 1| = %.3e\n", frame_name(k), tiling_n, dev);
                ok = ok && dev <= 1e-10;
            }
            return ok ? 0 : 1;
        }
        if (*parseval) {
            bool ok = true;
            for (FrameKind k : {FrameKind::meyer, FrameKind::shearlet}) {
                const auto r = parseval_check(k, parseval_n, trials, sc.seed);
                std::printf("%s n=%zu trials=%zu norm deviation %.3e reconstruction error %.3e\n", frame_name(k),
                            parseval_n, trials, r.max_norm_dev, r.max_recon_err);
                ok = ok && r.max_norm_dev <= 1e-8 && r.max_recon_err <= 1e-8;
            }
            return ok ? 0 : 1;
        }
        if (*sweep) {
            const auto rows = run_sweep(sc, quiet ? nullptr : &std::cerr);
            const std::string path = out_path(cfg, csv_name);
            std::ofstream os(path);
            if (!os) throw IoError("cannot write " + path);
            write_sweep_csv(rows, os);
            if (!os) throw IoError("write failed: " + path);
            std::printf("%s\n", path.c_str());
            return 0;
        }
        if (*demo) {
            const DemoOptions opts = demo_options(cfg);
            std::vector<Bar> bs;
            for (const auto& b : bars) bs.push_back(parse_bar(b));
            if (bars.empty()) {
                for (const auto& b : cfg.get_list("demo.bars", {})) bs.push_back(parse_bar(b));
            }
            const std::string dir = cfg.get_string("out", ".");
            std::vector<DemoRow> rows;
            if (image.empty()) {
                const std::size_t n = static_cast<std::size_t>(cfg.get_long("demo.size", static_cast<long>(demo_size)));
                if (bs.empty()) {
                    const long q = static_cast<long>(n / 4);
                    bs = {{q, 2}, {2 * q, 4}, {3 * q, 3}};
                }
                rows = run_demo(seismic_image(n, sc.seed), bs, opts, dir);
            } else {
                rows = run_demo(image, bs, opts, dir);
            }
            for (const auto& r : rows) std::printf("%s PSNR %s dB\n", r.frame.c_str(), format_number(r.psnr).c_str());
            return 0;
        }
        if (*coherence) {
            const FrameKind kind = coh_frame == "meyer" ? FrameKind::meyer : FrameKind::shearlet;
            if (coh_frame != "meyer" && coh_frame != "shearlet") throw ConfigError("frame", "expected meyer or shearlet");
            const std::size_t n = coh_n ? coh_n : level_grid_size(coh_j);
            const double h = coh_h >= 0.0 ? coh_h : mask_half_width(sc, coh_j);
            const LineModelSpec spec{sc.rho};
            const auto frame = level_frame(kind, coh_j, n);
            const Grid2D x0 = filtered_line_image(spec, coh_j, n);
            const MaskSpec mask = strip_mask(h, n, spec);
            const double eps = kind == FrameKind::meyer ? sc.eps_meyer : sc.eps_shearlet;
            const ClusterSet cs = cluster_set(*frame, coh_j, eps, sc.rho);
            const double delta = clustered_sparsity_delta(frame->analyze_real(x0), cs.members);
            const double mu = cluster_coherence(cs.members, mask, *frame);
            const double kappa =
                concentration_estimate(cs.members, mask, *frame, probes, cfg.get_u64("diag.seed", sc.seed));
            BoundReport r = error_bounds(delta, mu, sc.l1.noise_eps, frame_norm_constant(*frame, cs.members),
                                         masked_cluster_mass(cs.members, mask, x0, *frame));
            r.kappa_hat = kappa;
            std::printf("frame,j,n,h,cluster_size,delta,mu_c,kappa_hat,bound_l1,bound_thresh,valid\n");
            std::printf("%s,%d,%zu,%s,%zu,%s,%s,%s,%s,%s,%s\n", frame_name(kind), coh_j, n, format_number(h).c_str(),
                        cs.size(), format_number(r.delta).c_str(), format_number(r.mu_c).c_str(),
                        format_number(r.kappa_hat).c_str(), format_number(r.bound_l1).c_str(),
                        format_number(r.bound_thresh).c_str(), r.valid ? "true" : "false");
            return 0;
        }
        if (*portrait) {
            const std::size_t n = level_grid_size(por_j);
            const LineModelSpec spec{sc.rho};
            const Grid2D line = filtered_line_image(spec, por_j, n);
            const Grid2D x = por_h >= 0.0 ? apply_known(line, strip_mask(por_h, n, spec)) : line;
            std::vector<double> s(shears);
            for (std::size_t i = 0; i < shears; ++i)
                s[i] = shears == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(shears - 1);
            const std::vector<double> grid_t = uniform_grid_t(t_samples);
            const Portrait p = phase_space_portrait(dft(x), std::ldexp(1.0, -por_j), grid_t, s);
            const std::string path = out_path(cfg, "portrait.pgm");
            export_portrait(p, path);
            std::printf("%s\n", path.c_str());
            if (shears % 2 == 1 && por_h >= 0.0) {
                const Portrait ref = phase_space_portrait(dft(line), std::ldexp(1.0, -por_j), grid_t, s);
                const GapEdges g = ridge_gap(p, ref, shears / 2);
                std::printf("ridge gap edges %s %s\n", format_number(g.t_left).c_str(),
                            format_number(g.t_right).c_str());
                std::printf("ridge gap width %s (2h = %s)\n", format_number(g.width).c_str(),
                            format_number(2.0 * por_h).c_str());
            }
            return 0;
        }
        if (*plot) {
            std::string svg = plot_svg;
            if (svg.empty()) svg = std::filesystem::path(plot_csv).replace_extension(".svg").string();
            plot_sweep(plot_csv, svg);
            std::printf("%s\n", svg.c_str());
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "format error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
