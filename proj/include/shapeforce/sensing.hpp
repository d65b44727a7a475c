#pragma once

#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shapeforce/se3.hpp"
#include "shapeforce/types.hpp"

namespace shapeforce {

struct SignalPipelineConfig {
  Pose extrinsic;
  Pose alignment;       // rigid CAD alignment to the connector center
  int filter_window = 9;   // odd
  int filter_degree = 2;
  int history_length = 15;
  bool filter_enabled = true;

  void validate() const;
};

struct SignalWindow {
  Eigen::MatrixXd signals;         // history_length x 6, oldest first
  std::vector<double> timestamps;  // strictly increasing, seconds
};

struct TraceRecord {
  double t = 0.0;
  Pose tag_in_cam;
  DeformationSignal raw_signal;
  DeformationSignal filtered_signal;
  std::optional<Wrench> true_wrench;  // simulation only
};

class NotReadyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Causal local least-squares polynomial smoother: fits a polynomial to the
/// trailing window and evaluates it at the newest sample, so no future data
/// is used. During warm-up the fit degree drops to what the sample count
/// supports; the first sample passes through unchanged.
class PolynomialSmoother {
 public:
  PolynomialSmoother(int window, int degree);

  Vec6 push(const Vec6& raw);
  void reset();
  int window() const { return window_; }

 private:
  int window_;
  int degree_;
  std::vector<Eigen::VectorXd> weights_;  // per sample count 1..window
  std::deque<Vec6> buf_;
};

/// Streaming pose-to-signal pipeline: frame chain, zero referencing,
/// decomposition, smoothing, history window, trace recording.
///
/// Ingestion is serialized and window() returns a consistent snapshot, so
/// one producer and any number of readers can share a pipeline.
class SignalPipeline {
 public:
  explicit SignalPipeline(SignalPipelineConfig cfg);

  /// Stores the zero reference from an unloaded observation. Calling again
  /// mid-stream re-zeroes and restarts the filter and history (counted).
  void set_reference(const Pose& tag_in_cam);
  bool reference_set() const;

  /// Processes one tag observation. Throws if no reference is set or the
  /// timestamp does not advance.
  DeformationSignal ingest(double t, const Pose& tag_in_cam,
                           std::optional<Wrench> true_wrench = std::nullopt);

  /// Missing detection: holds the last filtered value and counts the gap.
  DeformationSignal ingest_missing(double t);

  /// Latest history_length filtered signals, oldest first. Throws
  /// NotReadyError until the pipeline has warmed up.
  SignalWindow window() const;
  bool warmed_up() const;

  DeformationSignal latest() const;

  const std::vector<TraceRecord>& trace() const { return trace_; }
  std::vector<TraceRecord> take_trace();

  int gap_count() const { return gap_count_; }
  int rezero_count() const { return rezero_count_; }
  const SignalPipelineConfig& config() const { return cfg_; }

 private:
  DeformationSignal ingest_locked(double t, const Pose& tag_in_cam,
                                  const std::optional<Wrench>& true_wrench);

  SignalPipelineConfig cfg_;
  mutable std::mutex mu_;
  std::optional<Pose> reference_;  // flange->aligned-connector at zero load
  PolynomialSmoother smoother_;
  std::deque<std::pair<double, Vec6>> history_;
  std::vector<TraceRecord> trace_;
  double last_t_ = 0.0;
  bool any_ingest_ = false;
  std::optional<TraceRecord> last_record_;
  int gap_count_ = 0;
  int rezero_count_ = 0;
};

}  // namespace shapeforce
