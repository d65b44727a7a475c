#include "shapeforce/contact.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace shapeforce {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kEps = 1e-12;

double penalty_n(const ContactScene& scene, double pen_mm, double rate_mm_s) {
  if (pen_mm <= 0.0) return 0.0;
  return std::max(0.0, scene.contact_stiffness_n_per_mm * pen_mm +
                           scene.contact_damping_ns_per_mm * rate_mm_s);
}

double tool_tilt_rad(const Pose& pose) {
  // angle between the tool axis and world z
  const double cz = std::clamp(pose.rotation()(2, 2), -1.0, 1.0);
  return std::acos(cz);
}

struct LateralOffset {
  Vec3 dir = Vec3::Zero();  // unit, in the xy plane; zero when on-axis
  double off_mm = 0.0;
};

LateralOffset lateral_offset(const Vec3& pos, const Vec3& center) {
  LateralOffset l;
  Vec3 d = pos - center;
  d.z() = 0.0;
  l.off_mm = d.norm() * 1000.0;
  if (l.off_mm > kEps) l.dir = d / d.norm();
  return l;
}

}  // namespace

const char* to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::peg: return "peg";
    case SceneKind::usb: return "usb";
    case SceneKind::screw: return "screw";
    case SceneKind::whiteboard: return "whiteboard";
    case SceneKind::maze: return "maze";
  }
  return "?";
}

SceneKind scene_kind_from_string(const std::string& s) {
  if (s == "peg") return SceneKind::peg;
  if (s == "usb") return SceneKind::usb;
  if (s == "screw") return SceneKind::screw;
  if (s == "whiteboard") return SceneKind::whiteboard;
  if (s == "maze") return SceneKind::maze;
  throw std::invalid_argument("unknown scene kind: " + s);
}

bool UsbGeometry::orientation_correct(double yaw) const {
  return std::abs(wrap_angle(yaw - correct_yaw_rad)) <= yaw_tol_rad;
}

double UsbGeometry::stop_depth_mm(double yaw) const {
  return orientation_correct(yaw) ? full_depth_mm : shallow_depth_mm;
}

bool MazeGeometry::is_wall(int r, int c) const {
  if (!in_bounds(r, c)) return true;
  return walls[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0;
}

Vec3 MazeGeometry::cell_center(int r, int c) const {
  const double cs = cell_size_mm / 1000.0;
  return origin + Vec3((c + 0.5) * cs, (r + 0.5) * cs, 0.0);
}

void MazeGeometry::cell_of(const Vec3& pos, int& r, int& c) const {
  const double cs = cell_size_mm / 1000.0;
  c = static_cast<int>(std::floor((pos.x() - origin.x()) / cs));
  r = static_cast<int>(std::floor((pos.y() - origin.y()) / cs));
}

void ContactScene::validate() const {
  if (contact_stiffness_n_per_mm <= 0 || contact_damping_ns_per_mm < 0 ||
      max_penetration_mm <= 0) {
    throw std::invalid_argument("ContactScene: contact parameters must be positive");
  }
  switch (kind) {
    case SceneKind::peg:
      if (peg.clearance_mm <= 0) throw std::invalid_argument("peg: clearance must be positive");
      if (peg.peg_radius_mm() <= 0) throw std::invalid_argument("peg: radius too small");
      if (peg.depth_mm <= 0) throw std::invalid_argument("peg: depth must be positive");
      break;
    case SceneKind::usb:
      if (usb.capture_halfwidth_mm <= 0) {
        throw std::invalid_argument("usb: capture halfwidth must be positive");
      }
      if (usb.shallow_depth_mm <= 0 || usb.shallow_depth_mm >= usb.full_depth_mm) {
        throw std::invalid_argument("usb: need 0 < shallow stop < full depth");
      }
      break;
    case SceneKind::screw:
      if (screw.pitch_mm_per_rev <= 0) throw std::invalid_argument("screw: pitch must be positive");
      if (screw.min_engagement_rev < 0 || screw.min_engagement_rev > screw.full_engagement_rev) {
        throw std::invalid_argument("screw: need 0 <= min engagement <= full engagement");
      }
      if (screw.friction_nm_per_rev < 0 || screw.seat_ramp_nm_per_rad <= 0 ||
          screw.capture_radius_mm <= 0 || screw.initial_engagement_rev < 0) {
        throw std::invalid_argument("screw: bad torque or capture parameters");
      }
      break;
    case SceneKind::whiteboard: {
      if (std::abs(board.normal.norm() - 1.0) > 1e-6) {
        throw std::invalid_argument("whiteboard: normal must be unit length");
      }
      const double tilt = std::acos(std::clamp(board.normal.z(), -1.0, 1.0));
      if (tilt > 15.0 * M_PI / 180.0 + 1e-9) {
        throw std::invalid_argument("whiteboard: tilt exceeds 15 degrees");
      }
      if (std::abs((board.stroke_start - board.point).dot(board.normal)) > 1e-6 ||
          std::abs((board.stroke_end - board.point).dot(board.normal)) > 1e-6) {
        throw std::invalid_argument("whiteboard: stroke endpoints must lie on the plane");
      }
      if (board.strip_segments < 1 || board.wipe_halfwidth_mm <= 0 ||
          (board.stroke_end - board.stroke_start).norm() < 1e-6) {
        throw std::invalid_argument("whiteboard: degenerate stroke");
      }
      break;
    }
    case SceneKind::maze: {
      if (maze.rows() < 1 || maze.cols() < 1) throw std::invalid_argument("maze: empty grid");
      for (const auto& row : maze.walls) {
        if (static_cast<int>(row.size()) != maze.cols()) {
          throw std::invalid_argument("maze: ragged grid");
        }
      }
      if (maze.cell_size_mm <= 0) throw std::invalid_argument("maze: cell size must be positive");
      if (!maze.in_bounds(maze.start_r, maze.start_c) ||
          !maze.in_bounds(maze.goal_r, maze.goal_c)) {
        throw std::invalid_argument("maze: start/goal out of bounds");
      }
      if (maze.is_wall(maze.start_r, maze.start_c) || maze.is_wall(maze.goal_r, maze.goal_c)) {
        throw std::invalid_argument("maze: start/goal must be free cells");
      }
      if (maze.start_r == maze.goal_r && maze.start_c == maze.goal_c) {
        throw std::invalid_argument("maze: start and goal must differ");
      }
      break;
    }
  }
}

namespace {

// ---- peg / usb ------------------------------------------------------------

struct InsertionParams {
  Vec3 center;       // surface point on the insertion axis
  double capture_mm;  // max lateral offset that still enters
  double bottom_mm;   // stop depth below the surface
  double flank_sin;   // tilt contribution factor (0 for the usb blade)
};

InsertionParams insertion_params(const ContactScene& scene, const EffectorState& state) {
  InsertionParams p;
  if (scene.kind == SceneKind::peg) {
    p.center = scene.peg.hole_center;
    p.capture_mm = scene.peg.clearance_mm;
    p.bottom_mm = scene.peg.depth_mm;
    p.flank_sin = std::sin(tool_tilt_rad(state.pose));
  } else {
    p.center = scene.usb.slot_center;
    p.capture_mm = scene.usb.capture_halfwidth_mm;
    p.bottom_mm = scene.usb.stop_depth_mm(state.gripper_yaw);
    p.flank_sin = 0.0;
  }
  return p;
}

Wrench wrench_insertion(const ContactScene& scene, const EffectorState& state) {
  const InsertionParams ip = insertion_params(scene, state);
  const Vec3 pos = state.pose.translation();
  const double tip_below = (ip.center.z() - pos.z()) * 1000.0;
  if (tip_below <= 0.0) return Wrench();

  const LateralOffset lat = lateral_offset(pos, ip.center);
  // the regime is history: a tool that entered through the mouth is inside
  // (step() maintains the depth); anything else rides on the surface rim
  const bool inside = state.insertion_depth_mm > 0.0;

  Vec3 force = Vec3::Zero();
  if (!inside) {
    const double rate = -state.velocity_mm_s.z();
    force.z() = penalty_n(scene, tip_below, rate);
    return Wrench(force, Vec3::Zero());
  }

  // wall interference, including the flank contribution of a tilted tool
  const double engaged = std::min(tip_below, ip.bottom_mm);
  const double interference = lat.off_mm + engaged * ip.flank_sin - ip.capture_mm;
  if (interference > 0.0 && lat.off_mm > kEps) {
    const double rate = state.velocity_mm_s.head<2>().dot(lat.dir.head<2>());
    force -= lat.dir * penalty_n(scene, interference, rate);
  }
  const double bottom_pen = tip_below - ip.bottom_mm;
  if (bottom_pen > 0.0) {
    force.z() += penalty_n(scene, bottom_pen, -state.velocity_mm_s.z());
  }
  return Wrench(force, Vec3::Zero());
}

Wrench wrench_screw(const ContactScene& scene, const EffectorState& state) {
  const ScrewGeometry& g = scene.screw;
  const Vec3 pos = state.pose.translation();
  const LateralOffset lat = lateral_offset(pos, g.axis_top);
  if (lat.off_mm > g.capture_radius_mm) return Wrench();

  // the cap surface follows the thread as it tightens
  const double surface_mm = g.axis_top.z() * 1000.0 - state.engagement_rev * g.pitch_mm_per_rev;
  const double pen = surface_mm - pos.z() * 1000.0;
  if (pen <= 0.0) return Wrench();

  Vec3 force(0, 0, penalty_n(scene, pen, -state.velocity_mm_s.z()));
  double resist;
  if (g.cross_threaded) {
    resist = g.seat_ramp_nm_per_rad * state.engagement_rev * kTwoPi;
  } else if (state.engagement_rev <= g.full_engagement_rev) {
    resist = g.friction_nm_per_rev * state.engagement_rev;
  } else {
    resist = g.friction_nm_per_rev * g.full_engagement_rev +
             g.seat_ramp_nm_per_rad * (state.engagement_rev - g.full_engagement_rev) * kTwoPi;
  }
  return Wrench(force, Vec3(0, 0, -resist));
}

Wrench wrench_board(const ContactScene& scene, const EffectorState& state) {
  const WhiteboardGeometry& g = scene.board;
  const double h = (state.pose.translation() - g.point).dot(g.normal);
  const double pen = -h * 1000.0;
  if (pen <= 0.0) return Wrench();
  const double rate = -state.velocity_mm_s.dot(g.normal);
  return Wrench(g.normal * penalty_n(scene, pen, rate), Vec3::Zero());
}

struct WallContact {
  bool active = false;
  Vec3 normal = Vec3::Zero();  // out of the wall
  double pen_mm = 0.0;
};

WallContact maze_wall_contact(const MazeGeometry& maze, const Vec3& pos) {
  WallContact wc;
  int r = 0, c = 0;
  maze.cell_of(pos, r, c);
  if (!maze.is_wall(r, c)) return wc;

  const double cs = maze.cell_size_mm / 1000.0;
  const double x0 = maze.origin.x() + c * cs;
  const double y0 = maze.origin.y() + r * cs;

  // exit through the nearest face with a free neighbor
  double best = 1e300;
  Vec3 normal = Vec3::Zero();
  if (!maze.is_wall(r, c - 1)) {
    const double d = pos.x() - x0;
    if (d < best) { best = d; normal = Vec3(-1, 0, 0); }
  }
  if (!maze.is_wall(r, c + 1)) {
    const double d = x0 + cs - pos.x();
    if (d < best) { best = d; normal = Vec3(1, 0, 0); }
  }
  if (!maze.is_wall(r - 1, c)) {
    const double d = pos.y() - y0;
    if (d < best) { best = d; normal = Vec3(0, -1, 0); }
  }
  if (!maze.is_wall(r + 1, c)) {
    const double d = y0 + cs - pos.y();
    if (d < best) { best = d; normal = Vec3(0, 1, 0); }
  }
  if (normal.isZero()) return wc;  // fully buried: no free face (clipped earlier)
  wc.active = true;
  wc.normal = normal;
  wc.pen_mm = best * 1000.0;
  return wc;
}

Wrench wrench_maze(const ContactScene& scene, const EffectorState& state) {
  const WallContact wc = maze_wall_contact(scene.maze, state.pose.translation());
  if (!wc.active || wc.pen_mm <= 0.0) return Wrench();
  const double rate = -state.velocity_mm_s.dot(wc.normal);
  return Wrench(wc.normal * penalty_n(scene, wc.pen_mm, rate), Vec3::Zero());
}

}  // namespace

Wrench contact_wrench(const ContactScene& scene, const EffectorState& state) {
  switch (scene.kind) {
    case SceneKind::peg:
    case SceneKind::usb: return wrench_insertion(scene, state);
    case SceneKind::screw: return wrench_screw(scene, state);
    case SceneKind::whiteboard: return wrench_board(scene, state);
    case SceneKind::maze: return wrench_maze(scene, state);
  }
  return Wrench();
}

namespace {

void clip_insertion(const ContactScene& scene, const EffectorState& prev, Vec3& pos,
                    const EffectorState& next_state) {
  const InsertionParams ip = insertion_params(scene, next_state);
  const double max_pen = scene.max_penetration_mm;
  double tip_below = (ip.center.z() - pos.z()) * 1000.0;
  if (tip_below <= 0.0) return;

  const bool was_inside = prev.insertion_depth_mm > 0.0;
  LateralOffset lat = lateral_offset(pos, ip.center);

  if (was_inside || lat.off_mm <= ip.capture_mm + 1e-9) {
    // in-hole regime: clamp lateral interference and the bottom stop
    if (lat.off_mm > ip.capture_mm + max_pen) {
      const double allowed = (ip.capture_mm + max_pen) / 1000.0;
      pos.head<2>() = ip.center.head<2>() + lat.dir.head<2>() * allowed;
    }
    if (tip_below > ip.bottom_mm + max_pen) {
      pos.z() = ip.center.z() - (ip.bottom_mm + max_pen) / 1000.0;
    }
  } else {
    // outside the capture region: the surface carries the tool
    if (tip_below > max_pen) {
      pos.z() = ip.center.z() - max_pen / 1000.0;
    }
  }
}

void clip_screw(const ContactScene& scene, const EffectorState& state, Vec3& pos) {
  const ScrewGeometry& g = scene.screw;
  const LateralOffset lat = lateral_offset(pos, g.axis_top);
  if (lat.off_mm > g.capture_radius_mm) return;
  const double surface_mm = g.axis_top.z() * 1000.0 - state.engagement_rev * g.pitch_mm_per_rev;
  const double pen = surface_mm - pos.z() * 1000.0;
  if (pen > scene.max_penetration_mm) {
    pos.z() = (surface_mm - scene.max_penetration_mm) / 1000.0;
  }
}

void clip_board(const ContactScene& scene, Vec3& pos) {
  const WhiteboardGeometry& g = scene.board;
  const double pen = -(pos - g.point).dot(g.normal) * 1000.0;
  if (pen > scene.max_penetration_mm) {
    pos += g.normal * (pen - scene.max_penetration_mm) / 1000.0;
  }
}

void clip_maze(const ContactScene& scene, Vec3& pos) {
  const WallContact wc = maze_wall_contact(scene.maze, pos);
  if (wc.active && wc.pen_mm > scene.max_penetration_mm) {
    pos += wc.normal * (wc.pen_mm - scene.max_penetration_mm) / 1000.0;
  }
}

void update_wipe_coverage(const ContactScene& scene, EffectorState& state) {
  const WhiteboardGeometry& g = scene.board;
  if (state.wipe_covered.empty()) {
    state.wipe_covered.assign(static_cast<std::size_t>(g.strip_segments), 0);
  }
  if (!state.in_contact) return;
  const Vec3 stroke = g.stroke_end - g.stroke_start;
  const double len = stroke.norm();
  const Vec3 dir = stroke / len;
  const Vec3 rel = state.pose.translation() - g.stroke_start;
  const double u = rel.dot(dir) / len;
  if (u < 0.0 || u > 1.0) return;
  const Vec3 perp = rel - rel.dot(dir) * dir;
  const Vec3 in_plane = perp - perp.dot(g.normal) * g.normal;
  if (in_plane.norm() * 1000.0 > g.wipe_halfwidth_mm) return;
  const int idx = std::min(static_cast<int>(u * g.strip_segments), g.strip_segments - 1);
  state.wipe_covered[static_cast<std::size_t>(idx)] = 1;
}

}  // namespace

StepResult step(const ContactScene& scene, const EffectorState& state,
                const MotionCommand& command, double dt_s) {
  if (dt_s <= 0.0) throw std::invalid_argument("step: dt must be positive");
  if (command.dpos_m.norm() * 1000.0 > kMaxStepMm + 1e-9) {
    throw std::invalid_argument("step: translation command exceeds max step");
  }
  if (std::abs(command.dyaw_rad) > kMaxYawStepRad + 1e-12) {
    throw std::invalid_argument("step: yaw command exceeds max step");
  }

  EffectorState next = state;
  next.gripper_yaw = wrap_angle(state.gripper_yaw + command.dyaw_rad);
  Vec3 pos = state.pose.translation() + command.dpos_m;

  // screw engagement accumulates while pressed and rotating
  if (scene.kind == SceneKind::screw) {
    const LateralOffset lat = lateral_offset(pos, scene.screw.axis_top);
    const double surface_mm =
        scene.screw.axis_top.z() * 1000.0 - state.engagement_rev * scene.screw.pitch_mm_per_rev;
    const bool pressed = lat.off_mm <= scene.screw.capture_radius_mm &&
                         pos.z() * 1000.0 <= surface_mm + 1e-9;
    if (pressed && command.dyaw_rad != 0.0) {
      next.engagement_rev =
          std::max(0.0, state.engagement_rev + command.dyaw_rad / kTwoPi);
    }
  }

  switch (scene.kind) {
    case SceneKind::peg:
    case SceneKind::usb: clip_insertion(scene, state, pos, next); break;
    case SceneKind::screw: clip_screw(scene, next, pos); break;
    case SceneKind::whiteboard: clip_board(scene, pos); break;
    case SceneKind::maze: clip_maze(scene, pos); break;
  }

  next.pose = Pose(state.pose.rotation(), pos);
  next.velocity_mm_s = (pos - state.pose.translation()) * 1000.0 / dt_s;

  // insertion depth bookkeeping
  if (scene.kind == SceneKind::peg || scene.kind == SceneKind::usb) {
    const InsertionParams ip = insertion_params(scene, next);
    const double tip_below = (ip.center.z() - pos.z()) * 1000.0;
    const LateralOffset lat = lateral_offset(pos, ip.center);
    const bool inside = tip_below > 0.0 &&
                        (state.insertion_depth_mm > 0.0 || lat.off_mm <= ip.capture_mm + 1e-9);
    next.insertion_depth_mm = inside ? tip_below : 0.0;
  } else if (scene.kind == SceneKind::screw) {
    next.insertion_depth_mm = next.engagement_rev * scene.screw.pitch_mm_per_rev;
  }

  const Wrench w = contact_wrench(scene, next);
  next.in_contact = w.force_n().norm() + w.torque_nm().norm() > 1e-12;
  if (scene.kind == SceneKind::whiteboard) update_wipe_coverage(scene, next);
  return StepResult{next, w};
}

bool is_success(const ContactScene& scene, const EffectorState& state) {
  switch (scene.kind) {
    case SceneKind::peg:
      return state.insertion_depth_mm >= scene.peg.depth_mm - scene.peg.clearance_mm;
    case SceneKind::usb:
      return scene.usb.orientation_correct(state.gripper_yaw) &&
             state.insertion_depth_mm >= scene.usb.full_depth_mm - 0.5;
    case SceneKind::screw:
      return !scene.screw.cross_threaded &&
             state.engagement_rev >= scene.screw.full_engagement_rev;
    case SceneKind::whiteboard: {
      if (state.wipe_covered.empty()) return false;
      int covered = 0;
      for (std::uint8_t c : state.wipe_covered) covered += c;
      return covered >= 0.95 * static_cast<double>(state.wipe_covered.size());
    }
    case SceneKind::maze: {
      const Vec3 goal = scene.maze.cell_center(scene.maze.goal_r, scene.maze.goal_c);
      const Vec3 d = state.pose.translation() - goal;
      return std::hypot(d.x(), d.y()) * 1000.0 <= 0.3 * scene.maze.cell_size_mm;
    }
  }
  return false;
}

EffectorState initial_effector(const ContactScene& scene) {
  EffectorState s;
  const Vec3 up(0, 0, 0.005);
  switch (scene.kind) {
    case SceneKind::peg: s.pose = Pose::from_translation(scene.peg.hole_center + up); break;
    case SceneKind::usb: s.pose = Pose::from_translation(scene.usb.slot_center + up); break;
    case SceneKind::screw:
      s.pose = Pose::from_translation(scene.screw.axis_top + up);
      s.engagement_rev = scene.screw.initial_engagement_rev;
      s.insertion_depth_mm = s.engagement_rev * scene.screw.pitch_mm_per_rev;
      break;
    case SceneKind::whiteboard:
      s.pose = Pose::from_translation(scene.board.stroke_start + scene.board.normal * 0.005);
      break;
    case SceneKind::maze:
      s.pose = Pose::from_translation(scene.maze.cell_center(scene.maze.start_r, scene.maze.start_c));
      break;
  }
  return s;
}

bool maze_solvable(const MazeGeometry& maze) {
  if (maze.is_wall(maze.start_r, maze.start_c) || maze.is_wall(maze.goal_r, maze.goal_c)) {
    return false;
  }
  std::vector<std::vector<char>> seen(static_cast<std::size_t>(maze.rows()),
                                      std::vector<char>(static_cast<std::size_t>(maze.cols()), 0));
  std::deque<std::pair<int, int>> frontier{{maze.start_r, maze.start_c}};
  seen[static_cast<std::size_t>(maze.start_r)][static_cast<std::size_t>(maze.start_c)] = 1;
  const int dr[4] = {-1, 1, 0, 0};
  const int dc[4] = {0, 0, -1, 1};
  while (!frontier.empty()) {
    const auto [r, c] = frontier.front();
    frontier.pop_front();
    if (r == maze.goal_r && c == maze.goal_c) return true;
    for (int i = 0; i < 4; ++i) {
      const int nr = r + dr[i], nc = c + dc[i];
      if (maze.is_wall(nr, nc)) continue;
      auto& flag = seen[static_cast<std::size_t>(nr)][static_cast<std::size_t>(nc)];
      if (!flag) {
        flag = 1;
        frontier.emplace_back(nr, nc);
      }
    }
  }
  return false;
}

MazeGeometry generate_solvable_maze(int rows, int cols, double wall_density, Rng& rng) {
  MazeGeometry maze;
  maze.start_r = 0;
  maze.start_c = 0;
  maze.goal_r = rows - 1;
  maze.goal_c = cols - 1;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    maze.walls.assign(static_cast<std::size_t>(rows),
                      std::vector<int>(static_cast<std::size_t>(cols), 0));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const bool endpoint = (r == maze.start_r && c == maze.start_c) ||
                              (r == maze.goal_r && c == maze.goal_c);
        maze.walls[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            (!endpoint && rng.uniform() < wall_density) ? 1 : 0;
      }
    }
    if (maze_solvable(maze)) return maze;
  }
  throw std::runtime_error("generate_solvable_maze: exhausted attempts");
}

ContactScene default_peg_scene() {
  ContactScene s;
  s.kind = SceneKind::peg;
  return s;
}

ContactScene default_usb_scene() {
  ContactScene s;
  s.kind = SceneKind::usb;
  return s;
}

ContactScene default_screw_scene(bool cross_threaded, double initial_engagement_rev) {
  ContactScene s;
  s.kind = SceneKind::screw;
  s.screw.cross_threaded = cross_threaded;
  s.screw.initial_engagement_rev = initial_engagement_rev;
  return s;
}

ContactScene default_whiteboard_scene(double tilt_deg) {
  ContactScene s;
  s.kind = SceneKind::whiteboard;
  const double a = tilt_deg * M_PI / 180.0;
  // tilt the board about the y axis; the stroke runs along the slope
  s.board.point = Vec3::Zero();
  s.board.normal = Vec3(std::sin(a), 0.0, std::cos(a));
  const Vec3 along(std::cos(a), 0.0, -std::sin(a));
  s.board.stroke_start = s.board.point + along * 0.0;
  s.board.stroke_end = s.board.point + along * 0.08;
  return s;
}

ContactScene default_maze_scene() {
  ContactScene s;
  s.kind = SceneKind::maze;
  s.maze.walls = {
      {0, 0, 0, 1, 0, 0, 0},
      {1, 1, 0, 1, 0, 1, 0},
      {0, 0, 0, 0, 0, 1, 0},
      {0, 1, 1, 1, 1, 1, 0},
      {0, 0, 0, 1, 0, 0, 0},
      {1, 1, 0, 1, 0, 1, 1},
      {0, 0, 0, 0, 0, 0, 0},
  };
  s.maze.start_r = 0;
  s.maze.start_c = 0;
  s.maze.goal_r = 6;
  s.maze.goal_c = 6;
  return s;
}

}  // namespace shapeforce
