#pragma once

#include "shapeforce/rng.hpp"
#include "shapeforce/se3.hpp"
#include "shapeforce/types.hpp"

namespace shapeforce {

/// 6x6 linear map from the deformation signal (mm, rad) to the wrench
/// (N, N*m). Singular matrices are rejected at construction; the inverse
/// (compliance) is cached for the forward simulation path.
class StiffnessMatrix {
 public:
  StiffnessMatrix();  // identity
  explicit StiffnessMatrix(const Mat6& k);

  const Mat6& matrix() const { return k_; }
  const Mat6& compliance() const { return k_inv_; }

  Vec6 apply(const Vec6& signal) const { return k_ * signal; }
  Vec6 solve(const Vec6& wrench) const { return k_inv_ * wrench; }

  bool is_spd(double tol = 1e-9) const;
  double condition_number() const;

 private:
  Mat6 k_;
  Mat6 k_inv_;
};

/// Camera/tag geometry that bounds what the vision front end can resolve.
struct CameraModel {
  double tag_width_mm = 20.0;
  double tag_image_width_px = 100.0;
  double pixel_resolution = 0.25;        // d_R, detectable fraction of a pixel
  double patch_half_diagonal_px = 70.0;  // r, used by the chord-length relation
  double probe_angle_rad = 0.78539816339744830961;  // 45 deg
  Pose extrinsic;                        // camera frame -> flange frame

  // metric size of one detectable pixel step at the tag plane
  double quantum_mm() const { return tag_width_mm / tag_image_width_px * pixel_resolution; }

  void validate() const;  // throws on non-positive scalars
};

/// Cyclic-load degradation: a scalar stiffness knockdown plus a plastic
/// drift offset, both analytic functions of the accumulated cycle count so
/// that aging composes exactly: age(age(s, a), b) == age(s, a + b).
struct AgingState {
  double cycles = 0.0;
  double stiffness_scale = 1.0;
  DeformationSignal drift_offset;

  static AgingState fresh() { return AgingState{}; }
};

/// stiffness_scale(c) = 1 - 0.15 * (c / 20000)^0.7
double aging_stiffness_scale(double cycles);
/// axial plastic drift magnitude, mm: 0.05 * (c / 20000)^0.7
double aging_drift_mm(double cycles);

AgingState age(const AgingState& s, double additional_cycles);

/// Ground-truth simulator of the compliant core: wrench in, tag pose out.
///
/// The observation chain mirrors the sensing pipeline in reverse: the true
/// deformation (under the aged effective stiffness, plus plastic drift) is
/// recomposed to a pose in the connector frame, conjugated by the alignment,
/// attached below the unloaded tag pose, and mapped into the camera frame
/// through the extrinsic inverse. Noise is applied in the camera frame:
/// translation snapped to the metric pixel quantum plus Gaussian jitter at
/// half the quantum, rotation jittered at the per-axis rotational
/// sensitivity scale.
class WristSimulator {
 public:
  WristSimulator(StiffnessMatrix k, CameraModel camera, AgingState aging,
                 Pose reference_tag_in_flange, Pose alignment, bool noise_enabled);

  const StiffnessMatrix& stiffness() const { return k_; }
  const CameraModel& camera() const { return camera_; }
  const AgingState& aging() const { return aging_; }
  const Pose& alignment() const { return alignment_; }
  bool noise_enabled() const { return noise_enabled_; }

  void set_aging(const AgingState& a) { aging_ = a; }
  void set_noise_enabled(bool on) { noise_enabled_ = on; }

  /// Deformation under the aged effective stiffness plus drift (no noise).
  DeformationSignal true_signal(const Wrench& w) const;

  Pose observe(const Wrench& w, Rng& rng) const;

  /// Noiseless zero-wrench observation; what set_reference sees.
  Pose unloaded_tag_in_cam() const;

  /// Stateless sensing chain vs. the unloaded reference; used by dataset
  /// generation where no streaming pipeline is involved.
  DeformationSignal signal_from_tag(const Pose& tag_in_cam) const;

  /// Per-component standard deviation of the raw observed signal
  /// (mm for translations, rad for rotations); the analytic noise floor.
  Vec6 signal_noise_floor() const;

 private:
  StiffnessMatrix k_;
  CameraModel camera_;
  AgingState aging_;
  Pose reference_tag_in_flange_;
  Pose alignment_;
  bool noise_enabled_;
  Vec3 rot_jitter_sigma_;   // per-axis, from the sensitivity formulas
  Pose flange_tag_of_signal(const DeformationSignal& s) const;
};

DeformationSignal deform(const StiffnessMatrix& k, const Wrench& w);

/// Lateral (x, y) displacement in mm of the lower connector under a payload
/// hung on a lever arm, with the wrist axis tilted by `angle_rad` from the
/// gravity axis (tilt about a horizontal axis; angle 0 loads purely axially).
double payload_displacement(const StiffnessMatrix& k, double payload_kg,
                            double lever_arm_m, double angle_rad);

/// Default fitted stiffness: diagonal, SPD. Lateral entries are anchored so
/// a 0.8 kg payload on a 6.8 cm lever displaces 3.312 mm at 90 degrees;
/// axial and torsional entries are chosen so the minimum detectable wrench
/// under the default camera keeps the axial force entry largest and the
/// torsional entry smallest.
StiffnessMatrix default_stiffness();

CameraModel default_camera();

/// Unloaded tag pose 8 cm below the flange, facing back at the camera.
Pose default_reference_tag_in_flange();

WristSimulator default_simulator(bool noise_enabled = true);

}  // namespace shapeforce
