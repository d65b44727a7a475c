#pragma once

#include <cstdint>

#include "shapeforce/calibration.hpp"
#include "shapeforce/types.hpp"
#include "shapeforce/wrist.hpp"

namespace shapeforce::kernels {

/// Sufficient statistics for the six per-component regressions, accumulated
/// in one pass: X'X, X'Y, and the per-component response sums needed for R^2.
struct Gram {
  Mat6 xtx = Mat6::Zero();
  Mat6 xty = Mat6::Zero();
  Vec6 y_sum = Vec6::Zero();
  Vec6 y_sq_sum = Vec6::Zero();
  long n = 0;
};

Gram gram_serial(const Eigen::MatrixXd& signals, const Eigen::MatrixXd& wrenches);

/// OpenMP row-partitioned accumulation. Per-thread partials are combined in
/// thread-index order, so the result is reproducible for a fixed thread
/// count (and matches the serial path to roundoff).
Gram gram_parallel(const Eigen::MatrixXd& signals, const Eigen::MatrixXd& wrenches);

Gram gram(const Eigen::MatrixXd& signals, const Eigen::MatrixXd& wrenches, bool parallel);

/// Uniform sampling box for calibration sweeps.
struct WrenchRanges {
  double force_n = 5.0;    // each force component in [-force_n, force_n]
  double torque_nm = 0.5;  // each torque component in [-torque_nm, torque_nm]
};

struct SimulatedRow {
  PairedSample sample;
  Pose tag_in_cam;
};

/// Simulated observation rows. Every row draws from its own seed derived
/// from `root_seed`, so the serial and parallel paths produce bit-identical
/// results regardless of scheduling.
std::vector<SimulatedRow> simulate_rows_serial(const WristSimulator& sim, int n,
                                               std::uint64_t root_seed,
                                               const WrenchRanges& ranges);
std::vector<SimulatedRow> simulate_rows_parallel(const WristSimulator& sim, int n,
                                                 std::uint64_t root_seed,
                                                 const WrenchRanges& ranges);
std::vector<SimulatedRow> simulate_rows(const WristSimulator& sim, int n,
                                        std::uint64_t root_seed, const WrenchRanges& ranges,
                                        bool parallel);

PairedDataset simulate_paired_rows(const WristSimulator& sim, int n, std::uint64_t root_seed,
                                   const WrenchRanges& ranges, bool parallel);

int max_threads();

}  // namespace shapeforce::kernels
