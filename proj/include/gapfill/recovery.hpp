#pragma once
#include <cstddef>
#include <vector>
#include "gapfill/frame.hpp"
#include "gapfill/model.hpp"

namespace gapfill {

// All solvers work on real grids through the real coefficient path.

struct ThresholdOutcome {
    IndexMask kept;
    std::size_t kept_count = 0;
    Grid2D reconstruction;
    double beta = 0.0;  // NaN when the kept set was given explicitly
};

// Keeps every coefficient with magnitude >= beta and synthesizes once.
ThresholdOutcome one_step_threshold(const Grid2D& x, const Frame& frame, double beta);
// Same with a prescribed kept set.
ThresholdOutcome one_step_keep(const Grid2D& x, const Frame& frame, const IndexMask& keep);

// Linearly interpolated q-quantile of the nonzero magnitudes (sorted position
// q (N - 1)); 0 if all are zero.
double quantile_threshold(const RealCoefficients& c, double q);
double quantile_threshold(std::vector<double> magnitudes, double q);

struct L1Options {
    std::size_t max_iter = 500;
    double tol = 1e-6;
    // Radius of the l2 ball (grid norm) around the known samples; 0 means exact agreement.
    double noise_eps = 0.0;
};

struct L1Solution {
    Grid2D x;
    std::size_t iterations = 0;
    bool converged = false;
    double primal_residual = 0.0;  // last relative iterate change
    std::vector<double> objective_trace;  // ||Phi^* x_t||_1 per iteration
};

// min ||Phi^* x||_1 subject to agreement with f_known off the mask, by a
// primal-dual iteration with unit steps (the frame is Parseval).
L1Solution l1_inpaint(const Grid2D& f_known, const MaskSpec& mask, const Frame& frame,
                      const L1Options& opts = {});

enum class Decay { linear, exponential };

struct ThresholdSchedule {
    double beta_start = 0.0;
    double beta_end = 0.0;
    std::size_t n_iter = 50;
    Decay decay = Decay::exponential;
};

// Threshold used at iteration t (0-based). Exponential decay to beta_end = 0
// runs geometrically down to 1e-3 beta_start and uses 0 on the last step.
double schedule_beta(const ThresholdSchedule& s, std::size_t t);

// x <- f_known + M Phi H_beta Phi^* x with hard thresholding H_beta.
Grid2D iterative_threshold_inpaint(const Grid2D& f_known, const MaskSpec& mask, const Frame& frame,
                                   const ThresholdSchedule& schedule);

// ||x - x0|| / ||x0||
double relative_error(const Grid2D& x, const Grid2D& x0);

}  // namespace gapfill
