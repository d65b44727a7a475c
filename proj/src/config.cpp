#include "shapeforce/config.hpp"

#include <stdexcept>

#include "json.hpp"
#include "shapeforce/io.hpp"

namespace shapeforce {

namespace {

using nlohmann::json;

json pose_to_json(const Pose& p) { return json(p.flatten()); }

Pose pose_from_json(const json& j) {
  std::array<double, 12> flat{};
  for (std::size_t i = 0; i < 12; ++i) flat[i] = j.at(i).get<double>();
  return Pose::from_flat(flat);
}

json vec3_to_json(const Vec3& v) { return json{v.x(), v.y(), v.z()}; }

Vec3 vec3_from_json(const json& j) {
  return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void maybe_pose(const json& j, const char* key, Pose& out) {
  if (j.contains(key)) out = pose_from_json(j.at(key));
}

void maybe_vec3(const json& j, const char* key, Vec3& out) {
  if (j.contains(key)) out = vec3_from_json(j.at(key));
}

}  // namespace

SimSetup::SimSetup()
    : stiffness(default_stiffness().matrix()),
      camera(default_camera()),
      reference_tag_in_flange(default_reference_tag_in_flange()),
      alignment(Pose::identity()) {}

namespace {

json camera_to_json(const CameraModel& cam) {
  json j;
  j["tag_width_mm"] = cam.tag_width_mm;
  j["tag_image_width_px"] = cam.tag_image_width_px;
  j["pixel_resolution"] = cam.pixel_resolution;
  j["patch_half_diagonal_px"] = cam.patch_half_diagonal_px;
  j["probe_angle_rad"] = cam.probe_angle_rad;
  j["extrinsic"] = pose_to_json(cam.extrinsic);
  return j;
}

CameraModel camera_from_json(const json& j, CameraModel cam) {
  maybe(j, "tag_width_mm", cam.tag_width_mm);
  maybe(j, "tag_image_width_px", cam.tag_image_width_px);
  maybe(j, "pixel_resolution", cam.pixel_resolution);
  maybe(j, "patch_half_diagonal_px", cam.patch_half_diagonal_px);
  maybe(j, "probe_angle_rad", cam.probe_angle_rad);
  maybe_pose(j, "extrinsic", cam.extrinsic);
  cam.validate();
  return cam;
}

json policy_to_json(const PolicyParams& p) {
  json j;
  j["contact_level"] = p.contact_level;
  j["hole_drop_level"] = p.hole_drop_level;
  j["seat_level"] = p.seat_level;
  j["jam_level"] = p.jam_level;
  j["tighten_level"] = p.tighten_level;
  j["collision_level"] = p.collision_level;
  j["safe_level"] = p.safe_level;
  j["debounce"] = p.debounce;
  j["drop_debounce"] = p.drop_debounce;
  j["hysteresis_frac"] = p.hysteresis_frac;
  j["search_pattern"] = p.search_pattern;
  j["search_envelope_mm"] = p.search_envelope_mm;
  j["spiral_pitch_mm"] = p.spiral_pitch_mm;
  j["search_step_mm"] = p.search_step_mm;
  j["press_signal"] = p.press_signal;
  j["press_gain"] = p.press_gain;
  j["approach_step_mm"] = p.approach_step_mm;
  j["descend_step_mm"] = p.descend_step_mm;
  j["lateral_gain"] = p.lateral_gain;
  j["insert_wait_level_frac"] = p.insert_wait_level_frac;
  j["seat_shallow_limit_mm"] = p.seat_shallow_limit_mm;
  j["yaw_step_rad"] = p.yaw_step_rad;
  j["screw_pitch_mm_per_rev"] = p.screw_pitch_mm_per_rev;
  j["screw_min_travel_mm"] = p.screw_min_travel_mm;
  j["pid"] = json{{"kp", p.pid.kp}, {"ki", p.pid.ki}, {"kd", p.pid.kd}};
  j["wipe_reference"] = p.wipe_reference;
  j["stroke_step_mm"] = p.stroke_step_mm;
  j["settle_steps"] = p.settle_steps;
  j["contact_loss_dwell"] = p.contact_loss_dwell;
  j["probe_step_mm"] = p.probe_step_mm;
  j["retreat_budget"] = p.retreat_budget;
  j["maze_priority"] = p.maze_priority;
  j["start_offset_min_mm"] = p.start_offset_min_mm;
  j["start_offset_max_mm"] = p.start_offset_max_mm;
  j["dt_s"] = p.dt_s;
  j["step_budget"] = p.step_budget;
  j["sensor_mode"] = p.sensor_mode;
  json ts = json::array();
  for (int i = 0; i < 6; ++i) ts.push_back(p.threshold_scale[i]);
  j["threshold_scale"] = ts;
  j["desk_screw_scene"] = json::parse(scene_to_json(p.desk_screw_scene));
  return j;
}

PolicyParams policy_from_json(const json& j, PolicyParams p) {
  maybe(j, "contact_level", p.contact_level);
  maybe(j, "hole_drop_level", p.hole_drop_level);
  maybe(j, "seat_level", p.seat_level);
  maybe(j, "jam_level", p.jam_level);
  maybe(j, "tighten_level", p.tighten_level);
  maybe(j, "collision_level", p.collision_level);
  maybe(j, "safe_level", p.safe_level);
  maybe(j, "debounce", p.debounce);
  maybe(j, "drop_debounce", p.drop_debounce);
  maybe(j, "hysteresis_frac", p.hysteresis_frac);
  maybe(j, "search_pattern", p.search_pattern);
  maybe(j, "search_envelope_mm", p.search_envelope_mm);
  maybe(j, "spiral_pitch_mm", p.spiral_pitch_mm);
  maybe(j, "search_step_mm", p.search_step_mm);
  maybe(j, "press_signal", p.press_signal);
  maybe(j, "press_gain", p.press_gain);
  maybe(j, "approach_step_mm", p.approach_step_mm);
  maybe(j, "descend_step_mm", p.descend_step_mm);
  maybe(j, "lateral_gain", p.lateral_gain);
  maybe(j, "insert_wait_level_frac", p.insert_wait_level_frac);
  maybe(j, "seat_shallow_limit_mm", p.seat_shallow_limit_mm);
  maybe(j, "yaw_step_rad", p.yaw_step_rad);
  maybe(j, "screw_pitch_mm_per_rev", p.screw_pitch_mm_per_rev);
  maybe(j, "screw_min_travel_mm", p.screw_min_travel_mm);
  if (j.contains("pid")) {
    const json& g = j.at("pid");
    maybe(g, "kp", p.pid.kp);
    maybe(g, "ki", p.pid.ki);
    maybe(g, "kd", p.pid.kd);
  }
  maybe(j, "wipe_reference", p.wipe_reference);
  maybe(j, "stroke_step_mm", p.stroke_step_mm);
  maybe(j, "settle_steps", p.settle_steps);
  maybe(j, "contact_loss_dwell", p.contact_loss_dwell);
  maybe(j, "probe_step_mm", p.probe_step_mm);
  maybe(j, "retreat_budget", p.retreat_budget);
  maybe(j, "maze_priority", p.maze_priority);
  maybe(j, "start_offset_min_mm", p.start_offset_min_mm);
  maybe(j, "start_offset_max_mm", p.start_offset_max_mm);
  maybe(j, "dt_s", p.dt_s);
  maybe(j, "step_budget", p.step_budget);
  maybe(j, "sensor_mode", p.sensor_mode);
  if (j.contains("threshold_scale")) {
    const json& ts = j.at("threshold_scale");
    for (int i = 0; i < 6; ++i) p.threshold_scale[i] = ts.at(static_cast<std::size_t>(i)).get<double>();
  }
  if (j.contains("desk_screw_scene")) {
    p.desk_screw_scene = scene_from_json(j.at("desk_screw_scene").dump());
  }
  return p;
}

json mat6_to_json(const Mat6& m) {
  json j = json::array();
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) j.push_back(m(r, c));
  return j;
}

}  // namespace

std::string setup_to_json(const SimSetup& s) {
  json j;
  j["stiffness"] = mat6_to_json(s.stiffness);
  j["camera"] = camera_to_json(s.camera);
  j["reference_tag_in_flange"] = pose_to_json(s.reference_tag_in_flange);
  j["alignment"] = pose_to_json(s.alignment);
  j["aging_cycles"] = s.aging_cycles;
  j["noise"] = s.noise;
  j["pipeline"] = json{{"filter_window", s.pipeline.filter_window},
                       {"filter_degree", s.pipeline.filter_degree},
                       {"history_length", s.pipeline.history_length},
                       {"filter_enabled", s.pipeline.filter_enabled}};
  j["policy"] = policy_to_json(s.policy);
  return j.dump(2) + "\n";
}

SimSetup setup_from_json(const std::string& text) {
  const json j = json::parse(text);
  SimSetup s;
  if (j.contains("stiffness")) {
    const json& k = j.at("stiffness");
    if (k.size() != 36) throw std::invalid_argument("config: stiffness needs 36 numbers");
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) s.stiffness(r, c) = k.at(static_cast<std::size_t>(6 * r + c)).get<double>();
  }
  if (j.contains("camera")) s.camera = camera_from_json(j.at("camera"), s.camera);
  maybe_pose(j, "reference_tag_in_flange", s.reference_tag_in_flange);
  maybe_pose(j, "alignment", s.alignment);
  maybe(j, "aging_cycles", s.aging_cycles);
  maybe(j, "noise", s.noise);
  if (j.contains("pipeline")) {
    const json& p = j.at("pipeline");
    maybe(p, "filter_window", s.pipeline.filter_window);
    maybe(p, "filter_degree", s.pipeline.filter_degree);
    maybe(p, "history_length", s.pipeline.history_length);
    maybe(p, "filter_enabled", s.pipeline.filter_enabled);
  }
  if (j.contains("policy")) s.policy = policy_from_json(j.at("policy"), s.policy);
  return s;
}

SimSetup load_setup(const std::string& path) { return setup_from_json(slurp_file(path)); }

void save_setup(const std::string& path, const SimSetup& setup) {
  spit_file(path, setup_to_json(setup));
}

WristSimulator make_simulator(const SimSetup& s) {
  return WristSimulator(StiffnessMatrix(s.stiffness), s.camera,
                        age(AgingState::fresh(), s.aging_cycles), s.reference_tag_in_flange,
                        s.alignment, s.noise);
}

SignalPipelineConfig make_pipeline_config(const SimSetup& s) {
  SignalPipelineConfig cfg;
  cfg.extrinsic = s.camera.extrinsic;
  cfg.alignment = s.alignment;
  cfg.filter_window = s.pipeline.filter_window;
  cfg.filter_degree = s.pipeline.filter_degree;
  cfg.history_length = s.pipeline.history_length;
  cfg.filter_enabled = s.pipeline.filter_enabled;
  return cfg;
}

std::string scene_to_json(const ContactScene& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["contact_stiffness_n_per_mm"] = s.contact_stiffness_n_per_mm;
  j["contact_damping_ns_per_mm"] = s.contact_damping_ns_per_mm;
  j["max_penetration_mm"] = s.max_penetration_mm;
  switch (s.kind) {
    case SceneKind::peg:
      j["hole"] = json{{"center", vec3_to_json(s.peg.hole_center)},
                       {"radius_mm", s.peg.hole_radius_mm},
                       {"clearance_mm", s.peg.clearance_mm},
                       {"depth_mm", s.peg.depth_mm}};
      break;
    case SceneKind::usb:
      j["slot"] = json{{"center", vec3_to_json(s.usb.slot_center)},
                       {"capture_halfwidth_mm", s.usb.capture_halfwidth_mm},
                       {"full_depth_mm", s.usb.full_depth_mm},
                       {"shallow_depth_mm", s.usb.shallow_depth_mm},
                       {"correct_yaw_rad", s.usb.correct_yaw_rad},
                       {"yaw_tol_rad", s.usb.yaw_tol_rad}};
      break;
    case SceneKind::screw:
      j["screw"] = json{{"axis_top", vec3_to_json(s.screw.axis_top)},
                        {"pitch_mm_per_rev", s.screw.pitch_mm_per_rev},
                        {"full_engagement_rev", s.screw.full_engagement_rev},
                        {"min_engagement_rev", s.screw.min_engagement_rev},
                        {"friction_nm_per_rev", s.screw.friction_nm_per_rev},
                        {"seat_ramp_nm_per_rad", s.screw.seat_ramp_nm_per_rad},
                        {"capture_radius_mm", s.screw.capture_radius_mm},
                        {"cross_threaded", s.screw.cross_threaded},
                        {"initial_engagement_rev", s.screw.initial_engagement_rev}};
      break;
    case SceneKind::whiteboard:
      j["plane"] = json{{"point", vec3_to_json(s.board.point)},
                        {"normal", vec3_to_json(s.board.normal)},
                        {"stroke_start", vec3_to_json(s.board.stroke_start)},
                        {"stroke_end", vec3_to_json(s.board.stroke_end)},
                        {"wipe_halfwidth_mm", s.board.wipe_halfwidth_mm},
                        {"strip_segments", s.board.strip_segments}};
      break;
    case SceneKind::maze: {
      json grid = json::array();
      for (const auto& row : s.maze.walls) grid.push_back(row);
      j["maze"] = json{{"grid", grid},
                       {"cell_size_mm", s.maze.cell_size_mm},
                       {"start", json{s.maze.start_r, s.maze.start_c}},
                       {"goal", json{s.maze.goal_r, s.maze.goal_c}},
                       {"origin", vec3_to_json(s.maze.origin)}};
      break;
    }
  }
  return j.dump(2) + "\n";
}

ContactScene scene_from_json(const std::string& text) {
  const json j = json::parse(text);
  ContactScene s;
  s.kind = scene_kind_from_string(j.at("kind").get<std::string>());
  maybe(j, "contact_stiffness_n_per_mm", s.contact_stiffness_n_per_mm);
  maybe(j, "contact_damping_ns_per_mm", s.contact_damping_ns_per_mm);
  maybe(j, "max_penetration_mm", s.max_penetration_mm);
  switch (s.kind) {
    case SceneKind::peg: {
      const json& h = j.at("hole");
      maybe_vec3(h, "center", s.peg.hole_center);
      maybe(h, "radius_mm", s.peg.hole_radius_mm);
      maybe(h, "clearance_mm", s.peg.clearance_mm);
      maybe(h, "depth_mm", s.peg.depth_mm);
      break;
    }
    case SceneKind::usb: {
      const json& u = j.at("slot");
      maybe_vec3(u, "center", s.usb.slot_center);
      maybe(u, "capture_halfwidth_mm", s.usb.capture_halfwidth_mm);
      maybe(u, "full_depth_mm", s.usb.full_depth_mm);
      maybe(u, "shallow_depth_mm", s.usb.shallow_depth_mm);
      maybe(u, "correct_yaw_rad", s.usb.correct_yaw_rad);
      maybe(u, "yaw_tol_rad", s.usb.yaw_tol_rad);
      break;
    }
    case SceneKind::screw: {
      const json& g = j.at("screw");
      maybe_vec3(g, "axis_top", s.screw.axis_top);
      maybe(g, "pitch_mm_per_rev", s.screw.pitch_mm_per_rev);
      maybe(g, "full_engagement_rev", s.screw.full_engagement_rev);
      maybe(g, "min_engagement_rev", s.screw.min_engagement_rev);
      maybe(g, "friction_nm_per_rev", s.screw.friction_nm_per_rev);
      maybe(g, "seat_ramp_nm_per_rad", s.screw.seat_ramp_nm_per_rad);
      maybe(g, "capture_radius_mm", s.screw.capture_radius_mm);
      maybe(g, "cross_threaded", s.screw.cross_threaded);
      maybe(g, "initial_engagement_rev", s.screw.initial_engagement_rev);
      break;
    }
    case SceneKind::whiteboard: {
      const json& b = j.at("plane");
      maybe_vec3(b, "point", s.board.point);
      maybe_vec3(b, "normal", s.board.normal);
      maybe_vec3(b, "stroke_start", s.board.stroke_start);
      maybe_vec3(b, "stroke_end", s.board.stroke_end);
      maybe(b, "wipe_halfwidth_mm", s.board.wipe_halfwidth_mm);
      maybe(b, "strip_segments", s.board.strip_segments);
      break;
    }
    case SceneKind::maze: {
      const json& m = j.at("maze");
      s.maze.walls.clear();
      for (const auto& row : m.at("grid")) {
        s.maze.walls.push_back(row.get<std::vector<int>>());
      }
      maybe(m, "cell_size_mm", s.maze.cell_size_mm);
      s.maze.start_r = m.at("start").at(0).get<int>();
      s.maze.start_c = m.at("start").at(1).get<int>();
      s.maze.goal_r = m.at("goal").at(0).get<int>();
      s.maze.goal_c = m.at("goal").at(1).get<int>();
      maybe_vec3(m, "origin", s.maze.origin);
      break;
    }
  }
  s.validate();
  return s;
}

ContactScene load_scene(const std::string& path) { return scene_from_json(slurp_file(path)); }

void save_scene(const std::string& path, const ContactScene& scene) {
  spit_file(path, scene_to_json(scene));
}

ContactScene default_scene_for(TaskKind kind) {
  switch (kind) {
    case TaskKind::peg:
    case TaskKind::desk: return default_peg_scene();
    case TaskKind::usb: return default_usb_scene();
    case TaskKind::screw: return default_screw_scene();
    case TaskKind::wipe: return default_whiteboard_scene(10.0);
    case TaskKind::maze: return default_maze_scene();
  }
  return default_peg_scene();
}

}  // namespace shapeforce
