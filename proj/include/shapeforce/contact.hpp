#pragma once

#include <cstdint>
#include <vector>

#include "shapeforce/rng.hpp"
#include "shapeforce/se3.hpp"
#include "shapeforce/types.hpp"

namespace shapeforce {

enum class SceneKind { peg, usb, screw, whiteboard, maze };

const char* to_string(SceneKind kind);
SceneKind scene_kind_from_string(const std::string& s);

struct PegGeometry {
  Vec3 hole_center{0, 0, 0};  // m, point on the surface plane at the hole axis
  double hole_radius_mm = 4.4;
  double clearance_mm = 0.4;  // hole radius minus peg radius
  double depth_mm = 10.0;
  double peg_radius_mm() const { return hole_radius_mm - clearance_mm; }
};

struct UsbGeometry {
  Vec3 slot_center{0, 0, 0};
  double capture_halfwidth_mm = 1.0;  // lateral capture of the slot mouth
  double full_depth_mm = 8.0;         // seat depth at the correct orientation
  double shallow_depth_mm = 1.0;      // hard stop at the wrong orientation
  double correct_yaw_rad = 3.14159265358979323846;
  double yaw_tol_rad = 0.5;

  bool orientation_correct(double yaw) const;
  double stop_depth_mm(double yaw) const;
};

struct ScrewGeometry {
  Vec3 axis_top{0, 0, 0};  // m, cap surface on the screw axis
  double pitch_mm_per_rev = 1.0;
  double full_engagement_rev = 3.0;
  double min_engagement_rev = 1.0;  // torque before this depth means cross-thread
  double friction_nm_per_rev = 0.15;
  double seat_ramp_nm_per_rad = 2.0;  // torque slope once seated
  double capture_radius_mm = 3.0;
  bool cross_threaded = false;
  double initial_engagement_rev = 0.0;  // pre-tightened joints start seated
};

struct WhiteboardGeometry {
  Vec3 point{0, 0, 0};
  Vec3 normal{0, 0, 1};  // unit, within 15 deg of vertical
  Vec3 stroke_start{0, 0, 0};
  Vec3 stroke_end{0.08, 0, 0};
  double wipe_halfwidth_mm = 6.0;
  int strip_segments = 100;
};

struct MazeGeometry {
  std::vector<std::vector<int>> walls;  // 1 = wall, 0 = free
  double cell_size_mm = 20.0;
  int start_r = 0, start_c = 0;
  int goal_r = 0, goal_c = 0;
  Vec3 origin{0, 0, 0};  // world position of the grid corner (min r, min c)

  int rows() const { return static_cast<int>(walls.size()); }
  int cols() const { return walls.empty() ? 0 : static_cast<int>(walls[0].size()); }
  bool in_bounds(int r, int c) const { return r >= 0 && r < rows() && c >= 0 && c < cols(); }
  bool is_wall(int r, int c) const;  // out of bounds counts as wall
  Vec3 cell_center(int r, int c) const;
  void cell_of(const Vec3& pos, int& r, int& c) const;
};

struct ContactScene {
  SceneKind kind = SceneKind::peg;
  double contact_stiffness_n_per_mm = 10.0;
  double contact_damping_ns_per_mm = 0.5;
  double max_penetration_mm = 1.0;

  PegGeometry peg;
  UsbGeometry usb;
  ScrewGeometry screw;
  WhiteboardGeometry board;
  MazeGeometry maze;

  void validate() const;
};

struct EffectorState {
  Pose pose;  // tool tip frame in world
  double gripper_yaw = 0.0;
  double insertion_depth_mm = 0.0;
  Vec3 velocity_mm_s = Vec3::Zero();
  double engagement_rev = 0.0;             // screw progress
  std::vector<std::uint8_t> wipe_covered;  // strip segments swept in contact
  bool in_contact = false;
};

struct MotionCommand {
  Vec3 dpos_m = Vec3::Zero();
  double dyaw_rad = 0.0;
};

inline constexpr double kMaxStepMm = 1.0;
inline constexpr double kMaxYawStepRad = 0.2;

/// External wrench on the wrist for the current state; zero when nothing
/// penetrates. Damping uses the velocity recorded in the state, so a freshly
/// constructed state evaluates the static penalty.
Wrench contact_wrench(const ContactScene& scene, const EffectorState& state);

struct StepResult {
  EffectorState state;
  Wrench wrench;
};

/// Applies the bounded motion command, clips against rigid geometry so a
/// step cannot tunnel through or dwell deeper than max_penetration, and
/// returns the new state plus the contact wrench (with damping).
StepResult step(const ContactScene& scene, const EffectorState& state,
                const MotionCommand& command, double dt_s);

bool is_success(const ContactScene& scene, const EffectorState& state);

/// Canonical start state per scene, clear of any contact.
EffectorState initial_effector(const ContactScene& scene);

/// Reachability oracle, independent of any exploration policy.
bool maze_solvable(const MazeGeometry& maze);

/// Random wall placement re-drawn until the flood-fill oracle confirms a
/// start-to-goal path.
MazeGeometry generate_solvable_maze(int rows, int cols, double wall_density, Rng& rng);

ContactScene default_peg_scene();
ContactScene default_usb_scene();
ContactScene default_screw_scene(bool cross_threaded = false,
                                 double initial_engagement_rev = 0.0);
ContactScene default_whiteboard_scene(double tilt_deg = 0.0);
ContactScene default_maze_scene();

}  // namespace shapeforce
