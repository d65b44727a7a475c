#include "shapeforce/wrist.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "shapeforce/calibration.hpp"

namespace shapeforce {

namespace {
constexpr double kAgingReferenceCycles = 20000.0;
constexpr double kAgingDropAtReference = 0.15;
constexpr double kAgingExponent = 0.7;
constexpr double kDriftAtReferenceMm = 0.05;
}  // namespace

StiffnessMatrix::StiffnessMatrix() : k_(Mat6::Identity()), k_inv_(Mat6::Identity()) {}

StiffnessMatrix::StiffnessMatrix(const Mat6& k) : k_(k) {
  if (!k.allFinite()) throw std::invalid_argument("StiffnessMatrix: non-finite entries");
  Eigen::FullPivLU<Mat6> lu(k);
  if (lu.rank() < 6) throw std::invalid_argument("StiffnessMatrix: singular matrix");
  k_inv_ = lu.inverse();
}

bool StiffnessMatrix::is_spd(double tol) const {
  if ((k_ - k_.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  Eigen::SelfAdjointEigenSolver<Mat6> es(k_);
  return es.eigenvalues().minCoeff() > tol;
}

double StiffnessMatrix::condition_number() const {
  Eigen::JacobiSVD<Mat6> svd(k_);
  return svd.singularValues()(0) / svd.singularValues()(5);
}

void CameraModel::validate() const {
  if (tag_width_mm <= 0 || tag_image_width_px <= 0 || pixel_resolution <= 0 ||
      patch_half_diagonal_px <= 0 || probe_angle_rad <= 0) {
    throw std::invalid_argument("CameraModel: all scalars must be strictly positive");
  }
}

double aging_stiffness_scale(double cycles) {
  return 1.0 - kAgingDropAtReference * std::pow(cycles / kAgingReferenceCycles, kAgingExponent);
}

double aging_drift_mm(double cycles) {
  return kDriftAtReferenceMm * std::pow(cycles / kAgingReferenceCycles, kAgingExponent);
}

AgingState age(const AgingState& s, double additional_cycles) {
  if (additional_cycles < 0) throw std::invalid_argument("age: additional_cycles must be >= 0");
  AgingState out;
  out.cycles = s.cycles + additional_cycles;
  out.stiffness_scale = aging_stiffness_scale(out.cycles);
  // plastic compression along the dominant loading axis
  out.drift_offset = DeformationSignal(Vec3(0, 0, -aging_drift_mm(out.cycles)), Vec3::Zero());
  return out;
}

WristSimulator::WristSimulator(StiffnessMatrix k, CameraModel camera, AgingState aging,
                               Pose reference_tag_in_flange, Pose alignment, bool noise_enabled)
    : k_(std::move(k)),
      camera_(std::move(camera)),
      aging_(aging),
      reference_tag_in_flange_(reference_tag_in_flange),
      alignment_(alignment),
      noise_enabled_(noise_enabled) {
  camera_.validate();
  const SensitivityVector s = sensitivity(camera_);
  rot_jitter_sigma_ = Vec3(s[3], s[4], s[5]);
}

DeformationSignal WristSimulator::true_signal(const Wrench& w) const {
  Vec6 sig = k_.solve(w.as_vector()) / aging_.stiffness_scale;
  sig += aging_.drift_offset.as_vector();
  return DeformationSignal::from_vector(sig);
}

Pose WristSimulator::flange_tag_of_signal(const DeformationSignal& s) const {
  // deformation lives in the aligned connector frame: conjugate back out
  const Pose d = recompose(s);
  return compose(reference_tag_in_flange_,
                 compose(alignment_, compose(d, alignment_.inverse())));
}

Pose WristSimulator::observe(const Wrench& w, Rng& rng) const {
  const Pose flange_tag = flange_tag_of_signal(true_signal(w));
  Pose cam_tag = compose(camera_.extrinsic.inverse(), flange_tag);
  if (!noise_enabled_) return cam_tag;

  // pixel quantization of the jittered position: zero-mean overall (dithered)
  const double q_m = camera_.quantum_mm() / 1000.0;
  Vec3 t = cam_tag.translation();
  for (int i = 0; i < 3; ++i) {
    t[i] = std::nearbyint((t[i] + rng.gaussian(q_m / 2.0)) / q_m) * q_m;
  }
  const Vec3 jitter(rng.gaussian(rot_jitter_sigma_.x()), rng.gaussian(rot_jitter_sigma_.y()),
                    rng.gaussian(rot_jitter_sigma_.z()));
  const Pose dr = Pose::from_euler_xyz(jitter);
  return Pose(cam_tag.rotation() * dr.rotation(), t);
}

Pose WristSimulator::unloaded_tag_in_cam() const {
  return compose(camera_.extrinsic.inverse(), flange_tag_of_signal(true_signal(Wrench())));
}

DeformationSignal WristSimulator::signal_from_tag(const Pose& tag_in_cam) const {
  const Pose t0 = compose(compose(camera_.extrinsic, unloaded_tag_in_cam()), alignment_);
  const Pose tt = compose(compose(camera_.extrinsic, tag_in_cam), alignment_);
  return decompose(deformation(t0, tt));
}

Vec6 WristSimulator::signal_noise_floor() const {
  // translation: pixel quantization (uniform, var q^2/12) plus Gaussian jitter
  // at q/2; rotation: Gaussian at the sensitivity scale
  const double q = camera_.quantum_mm();
  const double sigma_t = q * std::sqrt(1.0 / 12.0 + 0.25);
  Vec6 floor;
  floor << sigma_t, sigma_t, sigma_t, rot_jitter_sigma_.x(), rot_jitter_sigma_.y(),
      rot_jitter_sigma_.z();
  return floor;
}

DeformationSignal deform(const StiffnessMatrix& k, const Wrench& w) {
  return DeformationSignal::from_vector(k.solve(w.as_vector()));
}

double payload_displacement(const StiffnessMatrix& k, double payload_kg, double lever_arm_m,
                            double angle_rad) {
  if (angle_rad < 0.0 || angle_rad > 1.5707963267948966 + 1e-12) {
    throw std::invalid_argument("payload_displacement: angle must be in [0, pi/2]");
  }
  const double mg = payload_kg * kGravity;
  const double s = std::sin(angle_rad), c = std::cos(angle_rad);
  // tilt about a horizontal axis; payload hangs on the lever along the tool axis
  const Wrench w(Vec3(mg * s, 0.0, mg * c), Vec3(0.0, mg * lever_arm_m * s, 0.0));
  const DeformationSignal sig = deform(k, w);
  return std::hypot(sig.translation_mm().x(), sig.translation_mm().y());
}

StiffnessMatrix default_stiffness() {
  // lateral entries anchored so 0.8 kg on a 6.8 cm lever at 90 deg gives
  // 3.312 mm of lateral displacement
  const double k_lateral = 0.8 * kGravity / 3.312;  // N/mm
  Vec6 d;
  d << k_lateral, k_lateral, 5.0, 8.0, 8.0, 2.0;
  return StiffnessMatrix(d.asDiagonal());
}

CameraModel default_camera() {
  CameraModel cam;
  cam.extrinsic = Pose::from_euler_xyz(Vec3(0.2, 0.0, 0.0), Vec3(0.03, -0.01, 0.02));
  return cam;
}

Pose default_reference_tag_in_flange() {
  return Pose::from_translation(Vec3(0.0, 0.0, -0.08));
}

WristSimulator default_simulator(bool noise_enabled) {
  return WristSimulator(default_stiffness(), default_camera(), AgingState::fresh(),
                        default_reference_tag_in_flange(), Pose::identity(), noise_enabled);
}

}  // namespace shapeforce
