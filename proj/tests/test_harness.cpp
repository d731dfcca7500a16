#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "gapfill/config.hpp"
#include "gapfill/harness.hpp"
#include "gapfill/model.hpp"
#include "support.hpp"

using namespace gapfill;

namespace {

Config parse(const std::string& text) {
    std::istringstream is(text);
    return Config::parse(is);
}

std::string config_error_key(const std::string& text) {
    try {
        sweep_config(parse(text));
    } catch (const ConfigError& e) {
        return e.key;
    }
    return "";
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t k = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++k;
    return k;
}

SweepRecord record(const std::string& frame, const std::string& alg, int j, double err) {
    SweepRecord r;
    r.frame = frame;
    r.algorithm = alg;
    r.j = j;
    r.h_j = std::ldexp(0.25, -2 * j);
    r.relative_error = err;
    r.delta_j = 1.5;
    r.mu_c = 0.25;
    r.bound_l1 = 6.0;
    r.bound_thresh = 2.0;
    r.converged = j != 4;
    r.wall_time = 0.5;
    return r;
}

}  // namespace

TEST_CASE("config parsing") {
    const Config c = parse("# comment\nframes = meyer, shearlet\nj = 3..5\nl1.tol = 1e-7  # trailing\n\nseed=9\n");
    CHECK(c.get_list("frames", {}) == std::vector<std::string>{"meyer", "shearlet"});
    CHECK(c.get_int_list("j", {}) == std::vector<int>{3, 4, 5});
    CHECK(c.get_double("l1.tol", 0.0) == 1e-7);
    CHECK(c.get_u64("seed", 0) == 9);
    CHECK(c.get_long("absent", 4) == 4);
    CHECK(parse("j = 2,4").get_int_list("j", {}) == std::vector<int>{2, 4});

    for (const char* bad : {"frames\n", "= meyer\n", "frames =\n", "a = 1\na = 2\n", "bad key = 1\n"}) {
        CHECK_THROWS_AS(parse(bad), ConfigError);
    }
    try {
        parse("seed = 1\nj = 3\nj = 4\n");
        FAIL("duplicate key accepted");
    } catch (const ConfigError& e) {
        CHECK(e.key == "j");
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("x = abc").get_double("x", 0.0), ConfigError);
    CHECK_THROWS_AS(parse("x = 1.5").get_long("x", 0), ConfigError);
    CHECK_THROWS_AS(parse("x = 1,,2").get_list("x", {}), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/gapfill.cfg"), IoError);
}

TEST_CASE("sweep configuration") {
    const SweepConfig d = sweep_config(parse(""));
    CHECK(d.js == std::vector<int>{3, 4, 5});
    CHECK(d.frames.size() == 2);
    CHECK(d.l1.max_iter == 500);
    CHECK(d.l1.tol == 1e-6);
    CHECK(d.thresh_q == 0.9);
    CHECK(d.rho == 0.35);
    CHECK(mask_half_width(d, 3) == std::ldexp(0.25, -6));
    CHECK(config_error_key("frames =\n") == "frames");
    CHECK(config_error_key("frames = circle\n") == "frames");
    CHECK(config_error_key("algorithms = magic\n") == "algorithms");
    CHECK(config_error_key("h.law = const\nh.c = 0.4\n") == "h.c");
    CHECK(config_error_key("eps.shearlet = 0.25\n") == "eps.shearlet");
    CHECK(config_error_key("j = 1\n") == "j");
    CHECK(config_error_key("typo.key = 1\n") == "typo.key");
    CHECK(config_error_key("timing = sometimes\n") == "timing");
    const SweepConfig s = sweep_config(parse("h.law = 2^-j\nh.c = 0.125\nalgorithms = iterative\n"));
    CHECK(s.h_law == HLaw::per_2j);
    CHECK(mask_half_width(s, 4) == 0.125 / 16.0);
    CHECK(s.algorithms == std::vector<Algorithm>{Algorithm::iterative});
}

TEST_CASE("sweep rows, isolation and determinism") {
    const Config c = parse(
        "frames = meyer, shearlet\nalgorithms = one_step, iterative, l1\nj = 2\nl1.max_iter = 3\n"
        "iter.n = 5\ntiming = off\n");
    const SweepConfig sc = sweep_config(c);
    const auto rows = run_sweep(sc);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].frame == "meyer");
    CHECK(rows[0].algorithm == "one_step");
    CHECK(rows[5].frame == "shearlet");
    CHECK(rows[5].algorithm == "l1");
    for (const auto& r : rows) {
        CHECK(r.relative_error >= 0.0);
        CHECK(r.delta_j >= 0.0);
        CHECK(r.mu_c >= 0.0);
        CHECK(std::isnan(r.wall_time));
        CHECK(r.h_j == mask_half_width(sc, 2));
    }
    // three primal-dual steps never converge: the row is kept and flagged
    CHECK_FALSE(rows[2].converged);
    CHECK_FALSE(rows[5].converged);
    std::ostringstream a, b;
    write_sweep_csv(rows, a);
    write_sweep_csv(run_sweep(sc), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("frame,algorithm,j,h_j,relative_error,delta_j,mu_c,bound_l1,bound_thresh,converged,wall_time\n",
                        0) == 0);

    SweepConfig timed = sc;
    timed.timing = true;
    timed.algorithms = {Algorithm::one_step};
    for (const auto& r : run_sweep(timed)) CHECK(r.wall_time > 0.0);
}

TEST_CASE("sweep csv round trip and errors") {
    std::vector<SweepRecord> rows{record("meyer", "one_step", 3, 0.4), record("meyer", "one_step", 4, 0.3),
                                  record("shearlet", "l1", 3, 0.2)};
    rows[1].mu_c = std::numeric_limits<double>::quiet_NaN();
    rows[2].bound_l1 = std::numeric_limits<double>::infinity();
    std::ostringstream os;
    write_sweep_csv(rows, os);
    std::istringstream is(os.str());
    const auto back = read_sweep_csv(is);
    REQUIRE(back.size() == 3);
    CHECK(back[0].relative_error == 0.4);
    CHECK(std::isnan(back[1].mu_c));
    CHECK(std::isinf(back[2].bound_l1));
    CHECK_FALSE(back[1].converged);
    std::ostringstream again;
    write_sweep_csv(back, again);
    CHECK(again.str() == os.str());

    std::string text = os.str();
    const auto second_row = text.find('\n', text.find('\n') + 1) + 1;
    text.insert(second_row, "meyer,one_step,oops\n");
    std::istringstream bad(text);
    try {
        read_sweep_csv(bad);
        FAIL("malformed csv accepted");
    } catch (const FormatError& e) {
        CHECK(e.offset == 3);
    }
    std::istringstream noheader("a,b\n");
    CHECK_THROWS_AS(read_sweep_csv(noheader), FormatError);
}

TEST_CASE("svg rendering") {
    const std::string one = render_sweep_svg({record("meyer", "one_step", 3, 0.3)});
    CHECK(one.rfind("<?xml", 0) == 0);
    CHECK(count(one, "<polyline") == 1);
    CHECK(count(one, "<circle") == 1);
    CHECK(one.find("</svg>") != std::string::npos);

    std::vector<SweepRecord> rows;
    for (int j = 3; j <= 5; ++j) {
        rows.push_back(record("meyer", "one_step", j, 0.5 / j));
        rows.push_back(record("shearlet", "one_step", j, 0.1 * std::exp2(-j)));
    }
    const std::string svg = render_sweep_svg(rows);
    CHECK(count(svg, "<polyline") == 2);
    CHECK(count(svg, "<circle") == 6);
    CHECK(count(svg, "class=\"legend\"") == 2);
    std::smatch m;
    const std::regex pts("points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), pts); it != std::sregex_iterator(); ++it)
        CHECK(count((*it)[1].str(), ",") == 3);
    // x ticks are the levels, y ticks the powers of two spanning the errors
    std::vector<std::string> xt, yt;
    const std::regex xtick("class=\"xtick\"[^>]*>([^<]*)<"), ytick("class=\"ytick\"[^>]*>([^<]*)<");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), xtick); it != std::sregex_iterator(); ++it)
        xt.push_back((*it)[1].str());
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), ytick); it != std::sregex_iterator(); ++it)
        yt.push_back((*it)[1].str());
    CHECK(xt == std::vector<std::string>{"3", "4", "5"});
    double lo = 1e9, hi = 0.0;
    for (const auto& r : rows) {
        lo = std::min(lo, r.relative_error);
        hi = std::max(hi, r.relative_error);
    }
    const int k0 = static_cast<int>(std::floor(std::log2(lo))), k1 = static_cast<int>(std::ceil(std::log2(hi)));
    REQUIRE(yt.size() == static_cast<std::size_t>(k1 - k0 + 1));
    CHECK(std::stod(yt.front()) == doctest::Approx(std::exp2(k0)).epsilon(1e-5));
    CHECK(std::stod(yt.back()) == doctest::Approx(std::exp2(k1)).epsilon(1e-5));

    const auto dir = testing::scratch_dir("svg");
    const std::string csv = (dir / "s.csv").string(), out = (dir / "s.svg").string();
    {
        std::ofstream os(csv);
        write_sweep_csv(rows, os);
    }
    plot_sweep(csv, out);
    std::ifstream is(out);
    CHECK(is.good());
    {
        std::ofstream os(csv);
        os << "frame,algorithm\nx\n";
    }
    CHECK_THROWS_AS(plot_sweep(csv, out), FormatError);
}

TEST_CASE("demo plumbing") {
    const auto dir = testing::scratch_dir("demo");
    const Grid2D img = seismic_image(64, 3);
    CHECK(img.n == 64);
    DemoOptions opts;
    opts.schedule.n_iter = 5;
    opts.zoom = 16;
    const auto none = run_demo(img, {{20, 0}}, opts, (dir / "zero").string());
    REQUIRE(none.size() == 2);
    for (const auto& r : none) CHECK(std::isinf(r.psnr));
    const auto rows = run_demo(img, {{10, 2}, {30, 3}, {50, 2}}, opts, (dir / "three").string());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].frame == "wavelet");
    CHECK(rows[1].frame == "shearlet");
    for (const char* f : {"original.pgm", "masked.pgm", "wavelet.pgm", "shearlet.pgm", "zoom_wavelet.pgm",
                          "zoom_shearlet.pgm", "psnr.csv"})
        CHECK(std::filesystem::exists(dir / "three" / f));
    CHECK_THROWS_AS(run_demo((dir / "missing.pgm").string(), {{10, 2}}, opts, (dir / "x").string()), IoError);
    const MaskSpec m = bar_mask(64, {{10, 2}});
    std::size_t cols = 0;
    for (std::size_t b = 0; b < 64; ++b) cols += m.indicator(0, b).real() != 0.0;
    CHECK(cols == 4);
    CHECK(m.indicator(0, 8) == 1.0);
    CHECK(m.indicator(0, 12) == 0.0);
}

TEST_CASE("line image with one bar favours shearlets") {
    const std::size_t n = 128;
    // segment along the first image row so that a column bar cuts across it
    const Grid2D src = filtered_line_image({}, 3, n);
    Grid2D line(n, true);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) line(b, a) = src(a, b);
    double lo = 1e300, hi = -1e300;
    for (const auto& v : line.values) {
        lo = std::min(lo, v.real());
        hi = std::max(hi, v.real());
    }
    for (auto& v : line.values) v = 255.0 * (v.real() - lo) / (hi - lo);
    DemoOptions opts;
    const auto dir = testing::scratch_dir("demo_line");
    const auto rows = run_demo(line, {{10, 3}}, opts, dir.string());
    MESSAGE("wavelet " << rows[0].psnr << " dB, shearlet " << rows[1].psnr << " dB");
    CHECK(rows[1].psnr >= rows[0].psnr);
}

TEST_CASE("frame self-checks") {
    CHECK(tiling_deviation(FrameKind::meyer, 256) < 1e-10);
    CHECK(tiling_deviation(FrameKind::shearlet, 256) < 1e-10);
    for (FrameKind k : {FrameKind::meyer, FrameKind::shearlet}) {
        const ParsevalReport r = parseval_check(k, 64, 10, 1);
        CHECK(r.max_norm_dev < 1e-8);
        CHECK(r.max_recon_err < 1e-8);
    }
}
