#pragma once

#include <array>
#include <optional>

#include "shapeforce/types.hpp"

namespace shapeforce {

class DeformationSignal;

/// Rigid transform: orthonormal rotation (det +1) plus translation in meters.
/// Construction validates the rotation block to 1e-9; every operation below
/// therefore works on known-good inputs and reports no errors of its own.
class Pose {
 public:
  Pose() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}
  Pose(const Mat3& rotation, const Vec3& translation);

  static Pose identity() { return Pose(); }
  static Pose from_translation(const Vec3& t_m) { return Pose(Mat3::Identity(), t_m); }
  // intrinsic X-Y-Z (roll-pitch-yaw): R = Rx(rx) * Ry(ry) * Rz(rz)
  static Pose from_euler_xyz(const Vec3& euler_rad, const Vec3& t_m = Vec3::Zero());

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Mat4 matrix() const;

  Pose inverse() const;
  bool is_approx(const Pose& other, double tol = 1e-9) const;

  // 12-number row-major serialization: 9 rotation entries then translation.
  std::array<double, 12> flatten() const;
  static Pose from_flat(const std::array<double, 12>& v);

 private:
  Mat3 rotation_;
  Vec3 translation_;
};

/// 6D force-like signal: connector translation in millimeters and intrinsic
/// X-Y-Z Euler angles in radians, each wrapped into (-pi, pi].
class DeformationSignal {
 public:
  DeformationSignal() : translation_mm_(Vec3::Zero()), euler_rad_(Vec3::Zero()) {}
  DeformationSignal(const Vec3& translation_mm, const Vec3& euler_rad);

  static DeformationSignal from_vector(const Vec6& v);
  Vec6 as_vector() const;

  const Vec3& translation_mm() const { return translation_mm_; }
  const Vec3& euler_rad() const { return euler_rad_; }

  double operator[](int i) const { return i < 3 ? translation_mm_[i] : euler_rad_[i - 3]; }

 private:
  Vec3 translation_mm_;
  Vec3 euler_rad_;
};

/// 6D wrench: force in newtons, torque in newton-meters. Rejects NaN/Inf.
class Wrench {
 public:
  Wrench() : force_n_(Vec3::Zero()), torque_nm_(Vec3::Zero()) {}
  Wrench(const Vec3& force_n, const Vec3& torque_nm);

  static Wrench from_vector(const Vec6& v);
  Vec6 as_vector() const;

  const Vec3& force_n() const { return force_n_; }
  const Vec3& torque_nm() const { return torque_nm_; }

 private:
  Vec3 force_n_;
  Vec3 torque_nm_;
};

/// Homogeneous-matrix product semantics: a then b applied in a's frame.
Pose compose(const Pose& a, const Pose& b);

/// Relative motion of the lower connector: inverse(t0) composed with tt,
/// both poses expressed in the flange frame.
Pose deformation(const Pose& t0, const Pose& tt);

/// Frame chain from camera observation to flange frame via the calibrated
/// hand-eye extrinsic.
Pose tag_in_flange(const Pose& extrinsic, const Pose& tag_in_cam);

/// Splits a pose into the 6D signal (mm, intrinsic X-Y-Z Euler angles).
/// Near gimbal lock (|pitch| within 1e-6 of pi/2) the yaw is pinned to zero
/// and *degenerate, when supplied, is set; the call never fails.
DeformationSignal decompose(const Pose& p, bool* degenerate = nullptr);

/// Inverse of decompose: rebuilds the pose from the 6D signal.
Pose recompose(const DeformationSignal& s);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace shapeforce
