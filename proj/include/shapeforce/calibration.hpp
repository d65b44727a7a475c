#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "shapeforce/se3.hpp"
#include "shapeforce/types.hpp"
#include "shapeforce/wrist.hpp"

namespace shapeforce {

struct PairedSample {
  DeformationSignal signal;
  Wrench wrench;
};

struct PairedDataset {
  std::vector<PairedSample> rows;
  std::string source = "simulated";

  Eigen::MatrixXd signal_matrix() const;  // n x 6
  Eigen::MatrixXd wrench_matrix() const;  // n x 6
};

struct FitReport {
  StiffnessMatrix k_hat;
  Vec6 r_squared;
  Vec6 residual_rms;  // N or N*m per component
};

/// Thrown when the signal design matrix does not span all six axes; the
/// message names the unexcited direction.
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(const std::string& msg, const Vec6& null_direction)
      : std::runtime_error(msg), null_direction(null_direction) {}
  Vec6 null_direction;
};

/// Row-wise ordinary least squares, no intercept: each wrench component is
/// regressed on the 6D signal. R^2 is 1 - SS_res / SS_tot per component with
/// SS_tot taken about the component mean. `ridge` adds lambda * I to the
/// normal equations for near-deficient data (default off).
FitReport estimate_stiffness(const PairedDataset& data, double ridge = 0.0);

Wrench reconstruct_wrench(const StiffnessMatrix& k_hat, const DeformationSignal& signal);

/// Minimum deformation the camera can resolve per signal axis, ordered
/// (x, y, z, theta_x, theta_y, theta_z); mm for translations, rad for
/// rotations. All components strictly positive.
class SensitivityVector {
 public:
  explicit SensitivityVector(const Vec6& s);
  const Vec6& values() const { return s_; }
  double operator[](int i) const { return s_[i]; }

 private:
  Vec6 s_;
};

/// Visual sensitivity of the camera/tag geometry.
///
/// In-plane translations resolve one pixel quantum at tag scale:
///   s_x = s_z = (w_tag / w_img) * d_R.
/// The in-plane rotation comes from the chord-length relation
///   l_chord = 2 r sin(theta/2),  s_theta_y = (theta / l_chord) * d_R.
/// The remaining axes use a similar-triangle construction, frozen here:
/// depth resolves the quantum along the oblique probe ray,
///   s_y = s_x / sin(theta),
/// and the out-of-plane tilts resolve the angle subtended by one quantum at
/// the tag half-width,
///   s_theta_x = s_theta_z = 2 d_R / w_img.
SensitivityVector sensitivity(const CameraModel& cam);

/// F_min = K * s: the smallest wrench whose deformation clears the visual
/// sensitivity on every axis.
Wrench min_detectable_wrench(const StiffnessMatrix& k, const SensitivityVector& s);

}  // namespace shapeforce
