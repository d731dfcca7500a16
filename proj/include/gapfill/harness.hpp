#pragma once
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>
#include "gapfill/config.hpp"
#include "gapfill/frame.hpp"
#include "gapfill/recovery.hpp"

namespace gapfill {

enum class Algorithm { one_step, iterative, l1 };
enum class HLaw { per_4j, per_2j, constant };  // c 2^{-2j}, c 2^{-j}, c

const char* frame_name(FrameKind k);
const char* algorithm_name(Algorithm a);

struct SweepConfig {
    std::vector<FrameKind> frames{FrameKind::meyer, FrameKind::shearlet};
    std::vector<Algorithm> algorithms{Algorithm::one_step, Algorithm::l1};
    std::vector<int> js{3, 4, 5};
    HLaw h_law = HLaw::per_4j;
    double h_c = 0.25;
    double eps_meyer = 1.0;
    double eps_shearlet = 0.24;
    double rho = 0.35;
    bool thresh_oracle = true;  // false: quantile rule
    double thresh_q = 0.90;
    L1Options l1;
    ThresholdSchedule iter{1.0, 0.0, 50, Decay::exponential};  // betas as fractions of max |coefficient|
    std::size_t coherence_max_n = 128;  // mu_c is reported as nan above this grid size
    bool timing = true;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
};

// Every key any verb understands.
const std::vector<std::string>& known_config_keys();
// Throws ConfigError naming the offending key.
SweepConfig sweep_config(const Config& c);
double mask_half_width(const SweepConfig& c, int j);
// Line-model level j lives on the 2^{2j+1} grid.
std::size_t level_grid_size(int j);
std::shared_ptr<const Frame> level_frame(FrameKind kind, int j, std::size_t n);

struct SweepRecord {
    std::string frame;
    std::string algorithm;
    int j = 0;
    double h_j = 0.0;
    double relative_error = 0.0;
    double delta_j = 0.0;
    double mu_c = 0.0;
    double bound_l1 = 0.0;
    double bound_thresh = 0.0;
    bool converged = true;
    double wall_time = 0.0;
};

std::vector<SweepRecord> run_sweep(const SweepConfig& c, std::ostream* progress = nullptr);
void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& os);
// Throws FormatError carrying the 1-based line number.
std::vector<SweepRecord> read_sweep_csv(std::istream& is);
std::string format_number(double v);

// Polylines of relative_error against j, one per (frame, algorithm), on a log2 axis.
std::string render_sweep_svg(const std::vector<SweepRecord>& rows);
void plot_sweep(const std::string& csv_path, const std::string& svg_path);

struct Bar {
    long center = 0;
    long half_width = 0;  // columns center - half_width .. center + half_width - 1 are missing
};

struct DemoOptions {
    ThresholdSchedule schedule{1.0, 0.0, 50, Decay::exponential};  // fractions of max |coefficient|
    std::size_t zoom = 64;
};

struct DemoRow {
    std::string frame;
    double psnr = 0.0;  // inf when nothing is missing
};

// Grid of pixel values 0..255 from a square power-of-two PGM.
Grid2D image_grid(const GrayImage& img);
// Layered synthetic section: smooth curved reflectors with a Ricker-like trace profile.
Grid2D seismic_image(std::size_t n, std::uint64_t seed);
MaskSpec bar_mask(std::size_t n, const std::vector<Bar>& bars);
// PSNR against peak 255 over the missing samples only.
double masked_psnr(const Grid2D& x, const Grid2D& ref, const MaskSpec& mask);
// Full multiscale frames used for images.
std::shared_ptr<const Frame> image_frame(FrameKind kind, std::size_t n);

std::vector<DemoRow> run_demo(const Grid2D& image, const std::vector<Bar>& bars, const DemoOptions& opts,
                              const std::string& out_dir);
std::vector<DemoRow> run_demo(const std::string& image_path, const std::vector<Bar>& bars, const DemoOptions& opts,
                              const std::string& out_dir);
DemoOptions demo_options(const Config& c);

// Max |sum of squared windows - 1| over the frequencies the non-residual
// bands of the image frame fully cover.
double tiling_deviation(FrameKind kind, std::size_t n);

struct ParsevalReport {
    double max_norm_dev = 0.0;   // max | ||Phi^* f|| / ||f|| - 1 |
    double max_recon_err = 0.0;  // max ||Phi Phi^* f - f|| / ||f||
};
ParsevalReport parseval_check(FrameKind kind, std::size_t n, std::size_t trials, std::uint64_t seed);

}  // namespace gapfill
