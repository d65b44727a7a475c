#include "shapeforce/sensing.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace shapeforce {

void SignalPipelineConfig::validate() const {
  if (filter_window < 1 || filter_window % 2 == 0) {
    throw std::invalid_argument("SignalPipelineConfig: filter_window must be odd and positive");
  }
  if (filter_degree < 0 || filter_degree >= filter_window) {
    throw std::invalid_argument("SignalPipelineConfig: filter_degree must be < filter_window");
  }
  if (history_length < 1) {
    throw std::invalid_argument("SignalPipelineConfig: history_length must be >= 1");
  }
}

PolynomialSmoother::PolynomialSmoother(int window, int degree)
    : window_(window), degree_(degree) {
  weights_.reserve(static_cast<std::size_t>(window));
  for (int count = 1; count <= window; ++count) {
    const int deg = std::min(degree, count - 1);
    Eigen::MatrixXd a(count, deg + 1);
    for (int i = 0; i < count; ++i) {
      double p = 1.0;
      for (int j = 0; j <= deg; ++j) {
        a(i, j) = p;
        p *= static_cast<double>(i);
      }
    }
    // fitted value at the trailing edge: w' = a_last' (A'A)^-1 A'
    const Eigen::VectorXd a_last = a.row(count - 1).transpose();
    const Eigen::VectorXd z = (a.transpose() * a).ldlt().solve(a_last);
    weights_.push_back(a * z);
  }
}

void PolynomialSmoother::reset() { buf_.clear(); }

Vec6 PolynomialSmoother::push(const Vec6& raw) {
  buf_.push_back(raw);
  if (static_cast<int>(buf_.size()) > window_) buf_.pop_front();
  const int count = static_cast<int>(buf_.size());
  const Eigen::VectorXd& w = weights_[static_cast<std::size_t>(count - 1)];
  Vec6 out = Vec6::Zero();
  for (int i = 0; i < count; ++i) out += w[i] * buf_[static_cast<std::size_t>(i)];
  return out;
}

SignalPipeline::SignalPipeline(SignalPipelineConfig cfg)
    : cfg_(std::move(cfg)), smoother_(cfg_.filter_window, cfg_.filter_degree) {
  cfg_.validate();
}

void SignalPipeline::set_reference(const Pose& tag_in_cam) {
  std::lock_guard<std::mutex> lock(mu_);
  if (reference_) ++rezero_count_;
  reference_ = compose(compose(cfg_.extrinsic, tag_in_cam), cfg_.alignment);
  smoother_.reset();
  history_.clear();
  last_record_.reset();
  any_ingest_ = false;
}

bool SignalPipeline::reference_set() const {
  std::lock_guard<std::mutex> lock(mu_);
  return reference_.has_value();
}

DeformationSignal SignalPipeline::ingest(double t, const Pose& tag_in_cam,
                                         std::optional<Wrench> true_wrench) {
  std::lock_guard<std::mutex> lock(mu_);
  return ingest_locked(t, tag_in_cam, true_wrench);
}

DeformationSignal SignalPipeline::ingest_locked(double t, const Pose& tag_in_cam,
                                                const std::optional<Wrench>& true_wrench) {
  if (!reference_) throw std::logic_error("SignalPipeline: reference not set");
  if (any_ingest_ && t <= last_t_) {
    throw std::invalid_argument("SignalPipeline: non-monotone timestamp");
  }
  const Pose aligned = compose(compose(cfg_.extrinsic, tag_in_cam), cfg_.alignment);
  const DeformationSignal raw = decompose(deformation(*reference_, aligned));
  const Vec6 filtered_vec = cfg_.filter_enabled ? smoother_.push(raw.as_vector()) : raw.as_vector();
  const DeformationSignal filtered = DeformationSignal::from_vector(filtered_vec);

  history_.emplace_back(t, filtered_vec);
  if (static_cast<int>(history_.size()) > cfg_.history_length) history_.pop_front();

  TraceRecord rec{t, tag_in_cam, raw, filtered, true_wrench};
  trace_.push_back(rec);
  last_record_ = rec;
  last_t_ = t;
  any_ingest_ = true;
  return filtered;
}

DeformationSignal SignalPipeline::ingest_missing(double t) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!reference_) throw std::logic_error("SignalPipeline: reference not set");
  if (!last_record_) throw std::logic_error("SignalPipeline: gap before any detection");
  if (t <= last_t_) throw std::invalid_argument("SignalPipeline: non-monotone timestamp");
  ++gap_count_;
  // hold the last filtered value; the smoother sees it as a real sample
  smoother_.push(last_record_->filtered_signal.as_vector());
  history_.emplace_back(t, last_record_->filtered_signal.as_vector());
  if (static_cast<int>(history_.size()) > cfg_.history_length) history_.pop_front();

  TraceRecord rec = *last_record_;
  rec.t = t;
  rec.raw_signal = last_record_->filtered_signal;
  rec.true_wrench.reset();
  trace_.push_back(rec);
  last_record_ = rec;
  last_t_ = t;
  return rec.filtered_signal;
}

bool SignalPipeline::warmed_up() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(history_.size()) >= cfg_.history_length;
}

SignalWindow SignalPipeline::window() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (static_cast<int>(history_.size()) < cfg_.history_length) {
    throw NotReadyError("SignalPipeline: window not ready, have " +
                        std::to_string(history_.size()) + " of " +
                        std::to_string(cfg_.history_length) + " samples");
  }
  SignalWindow w;
  w.signals.resize(cfg_.history_length, 6);
  w.timestamps.reserve(static_cast<std::size_t>(cfg_.history_length));
  long r = 0;
  for (const auto& [t, sig] : history_) {
    w.signals.row(r++) = sig.transpose();
    w.timestamps.push_back(t);
  }
  return w;
}

DeformationSignal SignalPipeline::latest() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!last_record_) throw std::logic_error("SignalPipeline: no samples yet");
  return last_record_->filtered_signal;
}

std::vector<TraceRecord> SignalPipeline::take_trace() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<TraceRecord> out;
  out.swap(trace_);
  return out;
}

}  // namespace shapeforce
