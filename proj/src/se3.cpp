#include "shapeforce/se3.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace shapeforce {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kOrthoTol = 1e-9;

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

}  // namespace

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

Pose::Pose(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw std::invalid_argument("Pose: non-finite entries");
  }
  const double ortho_err = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (ortho_err > kOrthoTol) {
    throw std::invalid_argument("Pose: rotation is not orthonormal");
  }
  if (std::abs(rotation.determinant() - 1.0) > kOrthoTol) {
    throw std::invalid_argument("Pose: rotation determinant is not +1");
  }
}

Pose Pose::from_euler_xyz(const Vec3& euler_rad, const Vec3& t_m) {
  return Pose(rot_x(euler_rad.x()) * rot_y(euler_rad.y()) * rot_z(euler_rad.z()), t_m);
}

Mat4 Pose::matrix() const {
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(0, 0) = rotation_;
  m.block<3, 1>(0, 3) = translation_;
  return m;
}

Pose Pose::inverse() const {
  return Pose(rotation_.transpose(), -(rotation_.transpose() * translation_));
}

bool Pose::is_approx(const Pose& other, double tol) const {
  return (rotation_ - other.rotation_).cwiseAbs().maxCoeff() <= tol &&
         (translation_ - other.translation_).cwiseAbs().maxCoeff() <= tol;
}

std::array<double, 12> Pose::flatten() const {
  std::array<double, 12> v{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) v[static_cast<std::size_t>(3 * r + c)] = rotation_(r, c);
  for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(9 + i)] = translation_[i];
  return v;
}

Pose Pose::from_flat(const std::array<double, 12>& v) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = v[static_cast<std::size_t>(3 * i + j)];
  return Pose(r, Vec3(v[9], v[10], v[11]));
}

DeformationSignal::DeformationSignal(const Vec3& translation_mm, const Vec3& euler_rad)
    : translation_mm_(translation_mm), euler_rad_(euler_rad) {
  if (!translation_mm.allFinite() || !euler_rad.allFinite()) {
    throw std::invalid_argument("DeformationSignal: non-finite entries");
  }
  for (int i = 0; i < 3; ++i) euler_rad_[i] = wrap_angle(euler_rad_[i]);
}

DeformationSignal DeformationSignal::from_vector(const Vec6& v) {
  return DeformationSignal(v.head<3>(), v.tail<3>());
}

Vec6 DeformationSignal::as_vector() const {
  Vec6 v;
  v << translation_mm_, euler_rad_;
  return v;
}

Wrench::Wrench(const Vec3& force_n, const Vec3& torque_nm)
    : force_n_(force_n), torque_nm_(torque_nm) {
  if (!force_n.allFinite() || !torque_nm.allFinite()) {
    throw std::invalid_argument("Wrench: non-finite entries");
  }
}

Wrench Wrench::from_vector(const Vec6& v) { return Wrench(v.head<3>(), v.tail<3>()); }

Vec6 Wrench::as_vector() const {
  Vec6 v;
  v << force_n_, torque_nm_;
  return v;
}

Pose compose(const Pose& a, const Pose& b) {
  return Pose(a.rotation() * b.rotation(), a.rotation() * b.translation() + a.translation());
}

Pose deformation(const Pose& t0, const Pose& tt) { return compose(t0.inverse(), tt); }

Pose tag_in_flange(const Pose& extrinsic, const Pose& tag_in_cam) {
  return compose(extrinsic, tag_in_cam);
}

DeformationSignal decompose(const Pose& p, bool* degenerate) {
  const Mat3& r = p.rotation();
  // R = Rx(rx) Ry(ry) Rz(rz):
  //   r02 = sin(ry), r12 = -sin(rx)cos(ry), r22 = cos(rx)cos(ry),
  //   r01 = -cos(ry)sin(rz), r00 = cos(ry)cos(rz)
  const double s_pitch = std::clamp(r(0, 2), -1.0, 1.0);
  const double pitch = std::asin(s_pitch);
  bool locked = std::abs(std::abs(pitch) - kPi / 2.0) <= 1e-6;
  double roll, yaw;
  if (!locked) {
    roll = std::atan2(-r(1, 2), r(2, 2));
    yaw = std::atan2(-r(0, 1), r(0, 0));
  } else {
    // yaw pinned to zero; roll absorbs the remaining in-plane rotation
    yaw = 0.0;
    roll = (pitch > 0) ? std::atan2(r(1, 0), r(1, 1)) : std::atan2(-r(1, 0), r(1, 1));
  }
  if (degenerate) *degenerate = locked;
  return DeformationSignal(p.translation() * 1000.0,
                           Vec3(wrap_angle(roll), wrap_angle(pitch), wrap_angle(yaw)));
}

Pose recompose(const DeformationSignal& s) {
  return Pose::from_euler_xyz(s.euler_rad(), s.translation_mm() / 1000.0);
}

}  // namespace shapeforce
