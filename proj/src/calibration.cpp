#include "shapeforce/calibration.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "shapeforce/kernels.hpp"

namespace shapeforce {

Eigen::MatrixXd PairedDataset::signal_matrix() const {
  Eigen::MatrixXd x(static_cast<long>(rows.size()), 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<long>(i)) = rows[i].signal.as_vector().transpose();
  }
  return x;
}

Eigen::MatrixXd PairedDataset::wrench_matrix() const {
  Eigen::MatrixXd y(static_cast<long>(rows.size()), 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y.row(static_cast<long>(i)) = rows[i].wrench.as_vector().transpose();
  }
  return y;
}

namespace {

const char* kSignalAxisNames[6] = {"tx_mm", "ty_mm", "tz_mm", "rx_rad", "ry_rad", "rz_rad"};

std::string describe_null_direction(const Vec6& v) {
  int dominant = 0;
  v.cwiseAbs().maxCoeff(&dominant);
  std::ostringstream os;
  os << "unexcited signal direction ~ " << kSignalAxisNames[dominant] << ", null vector [";
  for (int i = 0; i < 6; ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace

FitReport estimate_stiffness(const PairedDataset& data, double ridge) {
  const long n = static_cast<long>(data.rows.size());
  if (n < 36) {
    throw std::invalid_argument("estimate_stiffness: need at least 36 rows, got " +
                                std::to_string(n));
  }
  const Eigen::MatrixXd x = data.signal_matrix();
  const Eigen::MatrixXd y = data.wrench_matrix();
  if (!x.allFinite() || !y.allFinite()) {
    throw std::invalid_argument("estimate_stiffness: non-finite samples");
  }

  const kernels::Gram g = kernels::gram(x, y, true);

  Eigen::SelfAdjointEigenSolver<Mat6> es(g.xtx);
  const Vec6 ev = es.eigenvalues();
  if (ridge <= 0.0 && ev(0) <= 1e-10 * std::max(ev(5), 1e-300)) {
    const Vec6 null_dir = es.eigenvectors().col(0);
    throw RankDeficiencyError("estimate_stiffness: rank-deficient design matrix; " +
                                  describe_null_direction(null_dir),
                              null_dir);
  }

  const Mat6 normal = g.xtx + ridge * Mat6::Identity();
  const Eigen::LDLT<Mat6> ldlt(normal);

  Mat6 k_hat;
  Vec6 r_squared, residual_rms;
  const double nd = static_cast<double>(n);
  for (int i = 0; i < 6; ++i) {
    const Vec6 beta = ldlt.solve(g.xty.col(i));
    k_hat.row(i) = beta.transpose();
    double ss_res = g.y_sq_sum[i] - 2.0 * beta.dot(g.xty.col(i)) +
                    beta.dot(g.xtx * beta);
    ss_res = std::max(ss_res, 0.0);
    const double ss_tot = g.y_sq_sum[i] - g.y_sum[i] * g.y_sum[i] / nd;
    r_squared[i] = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    residual_rms[i] = std::sqrt(ss_res / nd);
  }

  return FitReport{StiffnessMatrix(k_hat), r_squared, residual_rms};
}

Wrench reconstruct_wrench(const StiffnessMatrix& k_hat, const DeformationSignal& signal) {
  return Wrench::from_vector(k_hat.apply(signal.as_vector()));
}

SensitivityVector::SensitivityVector(const Vec6& s) : s_(s) {
  if (!s.allFinite() || s.minCoeff() <= 0.0) {
    throw std::invalid_argument("SensitivityVector: components must be strictly positive");
  }
}

SensitivityVector sensitivity(const CameraModel& cam) {
  cam.validate();
  if (cam.probe_angle_rad >= 3.141592653589793) {
    throw std::invalid_argument("sensitivity: probe angle must be below pi");
  }
  const double quantum_mm = cam.quantum_mm();
  const double s_plane = quantum_mm;
  const double s_depth = quantum_mm / std::sin(cam.probe_angle_rad);
  const double l_chord =
      2.0 * cam.patch_half_diagonal_px * std::sin(cam.probe_angle_rad / 2.0);
  const double s_ry = cam.probe_angle_rad / l_chord * cam.pixel_resolution;
  const double s_tilt = 2.0 * cam.pixel_resolution / cam.tag_image_width_px;
  Vec6 s;
  s << s_plane, s_depth, s_plane, s_tilt, s_ry, s_tilt;
  return SensitivityVector(s);
}

Wrench min_detectable_wrench(const StiffnessMatrix& k, const SensitivityVector& s) {
  return Wrench::from_vector(k.apply(s.values()));
}

}  // namespace shapeforce
