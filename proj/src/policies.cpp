#include "shapeforce/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shapeforce {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

const char* to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::peg: return "peg";
    case TaskKind::usb: return "usb";
    case TaskKind::screw: return "screw";
    case TaskKind::desk: return "desk";
    case TaskKind::wipe: return "wipe";
    case TaskKind::maze: return "maze";
  }
  return "?";
}

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "peg") return TaskKind::peg;
  if (s == "usb") return TaskKind::usb;
  if (s == "screw") return TaskKind::screw;
  if (s == "desk") return TaskKind::desk;
  if (s == "wipe") return TaskKind::wipe;
  if (s == "maze") return TaskKind::maze;
  throw std::invalid_argument("unknown task: " + s);
}

const char* to_string(SkillStatus status) {
  switch (status) {
    case SkillStatus::running: return "running";
    case SkillStatus::triggered: return "triggered";
    case SkillStatus::succeeded: return "succeeded";
    case SkillStatus::failed: return "failed";
  }
  return "?";
}

ThresholdTrigger::ThresholdTrigger(std::string id, int component, double level,
                                   Direction direction, double hysteresis, int debounce)
    : id_(std::move(id)),
      component_(component),
      level_(level),
      direction_(direction),
      hysteresis_(hysteresis),
      debounce_(debounce) {
  if (component < 0 || component > 5) throw std::invalid_argument("trigger: bad component");
  if (hysteresis < 0.0) throw std::invalid_argument("trigger: hysteresis must be >= 0");
  if (debounce < 1) throw std::invalid_argument("trigger: debounce must be >= 1");
}

bool ThresholdTrigger::update(double value) {
  const bool beyond = direction_ == Direction::rising ? value > level_ : value < level_;
  if (armed_) {
    consecutive_ = beyond ? consecutive_ + 1 : 0;
    if (consecutive_ >= debounce_) {
      armed_ = false;
      consecutive_ = 0;
      ++fire_count_;
      return true;
    }
    return false;
  }
  const double rearm_at =
      direction_ == Direction::rising ? level_ - hysteresis_ : level_ + hysteresis_;
  const bool retreated = direction_ == Direction::rising ? value < rearm_at : value > rearm_at;
  if (retreated) {
    armed_ = true;
    consecutive_ = 0;
  }
  return false;
}

void ThresholdTrigger::reset() {
  armed_ = true;
  consecutive_ = 0;
  fire_count_ = 0;
}

SkillOutcome run_trigger(ThresholdTrigger& trigger, std::span<const double> series) {
  SkillOutcome out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    ++out.steps_used;
    if (trigger.update(series[i])) {
      out.status = SkillStatus::triggered;
      out.fired_trigger = trigger.id();
      return out;
    }
  }
  return out;  // running: stream ended without a fire
}

PolicyParams::PolicyParams() {
  desk_screw_scene = default_screw_scene();
  desk_screw_scene.screw.axis_top = Vec3(0.05, 0.0, 0.0);
}

TaskEnv::TaskEnv(ContactScene scene, WristSimulator sim, SignalPipelineConfig pipe_cfg,
                 PolicyParams params, std::uint64_t seed)
    : scene_(std::move(scene)),
      sim_(std::move(sim)),
      pipeline_(std::move(pipe_cfg)),
      params_(std::move(params)),
      rng_(seed),
      state_(initial_effector(scene_)) {
  scene_.validate();
}

void TaskEnv::zero_reference() { pipeline_.set_reference(sim_.unloaded_tag_in_cam()); }

void TaskEnv::env_step(const MotionCommand& cmd) {
  const StepResult r = step(scene_, state_, cmd, params_.dt_s);
  state_ = r.state;
  wrench_ = r.wrench;
  t_ += params_.dt_s;
  const Pose tag = sim_.observe(wrench_, rng_);
  const DeformationSignal filtered = pipeline_.ingest(t_, tag, wrench_);
  if (params_.sensor_mode == "ft") {
    // baseline shim: thresholds evaluated on the true wrench in signal units
    signal_ = sim_.stiffness().solve(wrench_.as_vector());
  } else {
    signal_ = filtered.as_vector();
  }
  ++steps_;
}

void TaskEnv::switch_scene(ContactScene next) {
  next.validate();
  scene_ = std::move(next);
  state_.insertion_depth_mm = 0.0;
  state_.wipe_covered.clear();
  state_.engagement_rev =
      scene_.kind == SceneKind::screw ? scene_.screw.initial_engagement_rev : 0.0;
}

double TaskEnv::scaled_level(double level, int component) const {
  return level * params_.threshold_scale[component];
}

void TaskEnv::push_event(PolicyEvent e) {
  e.step = steps_;
  events_.push_back(std::move(e));
}

namespace {

MotionCommand descend(double dz_mm) { return MotionCommand{Vec3(0, 0, -dz_mm / 1000.0), 0.0}; }

Vec3 clamp_step(const Vec3& d_m, double limit_mm) {
  const double n = d_m.norm() * 1000.0;
  if (n <= limit_mm || n == 0.0) return d_m;
  return d_m * (limit_mm / n);
}

// proportional z correction holding the press signal near its target; the
// deadband keeps the tool still when close, so damping transients do not
// ripple the force signal while sliding
double press_correction_mm(const TaskEnv& env) {
  const double target = env.scaled_level(env.params().press_signal, kTz);
  const double err = env.signal()[kTz] - target;
  if (std::abs(err) < 0.25 * target) return 0.0;
  return std::clamp(env.params().press_gain * err, -0.1, 0.1);
}

}  // namespace

SkillOutcome approach_surface(TaskEnv& env) {
  const PolicyParams& p = env.params();
  const double level = env.scaled_level(p.contact_level, kTz);
  ThresholdTrigger tau1("tau1", kTz, level, ThresholdTrigger::Direction::rising,
                        p.hysteresis_frac * level, p.debounce);
  SkillOutcome out;
  const int cap = 4000;
  for (int i = 0; i < cap && !env.budget_exhausted(); ++i) {
    env.env_step(descend(p.approach_step_mm));
    ++out.steps_used;
    if (tau1.update(env.signal()[kTz])) {
      // settle the press before handing over, so the search starts from a
      // tightly regulated contact level
      for (int j = 0; j < 40; ++j) {
        env.env_step(MotionCommand{Vec3(0, 0, press_correction_mm(env) / 1000.0), 0.0});
        ++out.steps_used;
      }
      out.status = SkillStatus::triggered;
      out.fired_trigger = "tau1";
      return out;
    }
  }
  out.status = SkillStatus::failed;
  return out;
}

SkillOutcome surface_search(TaskEnv& env) {
  const PolicyParams& p = env.params();
  const double level = env.scaled_level(p.hole_drop_level, kTz);
  ThresholdTrigger tau2("tau2", kTz, level, ThresholdTrigger::Direction::falling,
                        p.hysteresis_frac * level, p.drop_debounce);
  SkillOutcome out;
  const Vec3 start = env.state().pose.translation();

  double arc_s = 0.0;
  double phi = 0.0;
  int raster_leg = 0;
  const double b = p.spiral_pitch_mm / kTwoPi;  // spiral radius growth per radian

  // once the press signal collapses the tool is dropping into the hole:
  // hold the pattern (z motion only) and let tau2 confirm, so the reported
  // detection is the position where containment actually happened
  const double advance_floor = 0.55 * env.scaled_level(p.press_signal, kTz);

  while (!env.budget_exhausted()) {
    if (env.signal()[kTz] < advance_floor && out.steps_used > 0) {
      env.env_step(MotionCommand{Vec3(0, 0, press_correction_mm(env) / 1000.0), 0.0});
      ++out.steps_used;
      if (tau2.update(env.signal()[kTz])) {
        out.status = SkillStatus::triggered;
        out.fired_trigger = "tau2";
        return out;
      }
      continue;
    }
    Vec3 target_rel = Vec3::Zero();
    double radius_mm = 0.0;
    if (p.search_pattern == "raster") {
      // serpentine rows spaced one pitch apart across the envelope
      const double row_len = 2.0 * p.search_envelope_mm;
      const int rows = static_cast<int>(row_len / p.spiral_pitch_mm) + 1;
      const int leg = raster_leg / 2;
      if (leg >= rows) {
        out.status = SkillStatus::failed;
        return out;
      }
      const double y = -p.search_envelope_mm + leg * p.spiral_pitch_mm;
      const double x_end = (leg % 2 == 0) ? p.search_envelope_mm : -p.search_envelope_mm;
      target_rel = (raster_leg % 2 == 0) ? Vec3((leg % 2 == 0) ? -p.search_envelope_mm : p.search_envelope_mm, y, 0)
                                         : Vec3(x_end, y, 0);
      const Vec3 cur = (env.state().pose.translation() - start) * 1000.0;
      if ((target_rel - Vec3(cur.x(), cur.y(), 0)).head<2>().norm() < 0.05) ++raster_leg;
      radius_mm = std::max(std::abs(cur.x()), std::abs(cur.y()));
    } else {
      arc_s += p.search_step_mm;
      const double r = b * phi;
      phi += p.search_step_mm / std::max(r, b);
      radius_mm = b * phi;
      target_rel = Vec3(radius_mm * std::cos(phi), radius_mm * std::sin(phi), 0.0);
    }
    if (radius_mm > p.search_envelope_mm) {
      out.status = SkillStatus::failed;
      return out;
    }

    const Vec3 cur = env.state().pose.translation();
    Vec3 d = (start + target_rel / 1000.0) - cur;
    d.z() = 0.0;
    d = clamp_step(d, 2.0 * p.search_step_mm);
    d.z() = press_correction_mm(env) / 1000.0;
    env.env_step(MotionCommand{clamp_step(d, kMaxStepMm * 0.9), 0.0});
    ++out.steps_used;
    if (tau2.update(env.signal()[kTz])) {
      out.status = SkillStatus::triggered;
      out.fired_trigger = "tau2";
      return out;
    }
  }
  out.status = SkillStatus::failed;
  return out;
}

SkillOutcome compliant_insert(TaskEnv& env) {
  const PolicyParams& p = env.params();
  const double seat = env.scaled_level(p.seat_level, kTz);
  const double jam = env.scaled_level(p.jam_level, kTz);
  ThresholdTrigger tau3("tau3", kTz, seat, ThresholdTrigger::Direction::rising,
                        p.hysteresis_frac * seat, p.debounce);
  ThresholdTrigger jam_guard("jam", kTz, jam, ThresholdTrigger::Direction::rising, 0.0, 2);
  SkillOutcome out;

  // arm seating only after the contact transient from the search phase decays
  bool armed = false;
  const double arm_below = seat * p.insert_wait_level_frac;
  const int cap = 8000;
  for (int i = 0; i < cap && !env.budget_exhausted(); ++i) {
    Vec3 d(p.lateral_gain * env.signal()[kTx] / 1000.0,
           p.lateral_gain * env.signal()[kTy] / 1000.0, 0.0);
    d = clamp_step(d, 0.15);
    d.z() = -p.descend_step_mm / 1000.0;
    env.env_step(MotionCommand{d, 0.0});
    ++out.steps_used;
    const double z = env.signal()[kTz];
    if (!armed) {
      armed = z < arm_below;
      continue;
    }
    if (jam_guard.update(z)) {
      out.status = SkillStatus::failed;
      out.fired_trigger = "jam";
      return out;
    }
    if (tau3.update(z)) {
      out.fired_trigger = "tau3";
      if (env.scene().kind == SceneKind::usb &&
          env.state().insertion_depth_mm <= p.seat_shallow_limit_mm) {
        out.status = SkillStatus::failed;
        out.retry_suggested = true;
        return out;
      }
      out.status =
          is_success(env.scene(), env.state()) ? SkillStatus::succeeded : SkillStatus::failed;
      return out;
    }
  }
  out.status = SkillStatus::failed;
  return out;
}

SkillOutcome screw_tighten(TaskEnv& env) {
  const PolicyParams& p = env.params();
  const double level = env.scaled_level(p.tighten_level, kRz);
  // the joint resists tightening, so the z torque signal goes negative
  ThresholdTrigger tau2("tau2", kRz, -level, ThresholdTrigger::Direction::falling,
                        p.hysteresis_frac * level, 1);
  SkillOutcome out;
  double travel_mm = 0.0;
  const int cap = 8000;
  for (int i = 0; i < cap && !env.budget_exhausted(); ++i) {
    const double dz_mm = p.screw_pitch_mm_per_rev * p.yaw_step_rad / kTwoPi;
    env.env_step(MotionCommand{Vec3(0, 0, -dz_mm / 1000.0), p.yaw_step_rad});
    travel_mm += dz_mm;
    ++out.steps_used;
    if (tau2.update(env.signal()[kRz])) {
      out.fired_trigger = "tau2";
      // torque before the engagement depth means a crossed thread
      out.status = travel_mm < p.screw_min_travel_mm ? SkillStatus::failed
                                                     : SkillStatus::succeeded;
      return out;
    }
  }
  out.status = SkillStatus::failed;
  return out;
}

SkillOutcome pid_wipe(TaskEnv& env, double* steady_abs_err, double* peak_signal) {
  const PolicyParams& p = env.params();
  const WhiteboardGeometry& g = env.scene().board;
  const double ref = env.scaled_level(p.wipe_reference, kTz);
  const Vec3 stroke = g.stroke_end - g.stroke_start;
  const double len_mm = stroke.norm() * 1000.0;
  const Vec3 along = stroke.normalized();

  SkillOutcome out;
  double acc = 0.0, prev_e = 0.0, traveled_mm = 0.0;
  int loss = 0;
  double peak = 0.0;
  double err_sum = 0.0;
  int err_count = 0;
  const int traverse_steps = static_cast<int>(len_mm / p.stroke_step_mm) + 1;
  const int total = p.settle_steps + traverse_steps + 40;

  for (int i = 0; i < total && !env.budget_exhausted(); ++i) {
    const double e = ref - env.signal()[kTz];
    acc += e;
    const double de = e - prev_e;
    prev_e = e;
    const double u_mm = std::clamp(p.pid.kp * e + p.pid.ki * acc + p.pid.kd * de, -0.3, 0.3);

    Vec3 d = -g.normal * (u_mm / 1000.0);  // positive error presses along -normal
    if (i >= p.settle_steps && traveled_mm < len_mm) {
      d += along * (p.stroke_step_mm / 1000.0);
      traveled_mm += p.stroke_step_mm;
    }
    env.env_step(MotionCommand{clamp_step(d, kMaxStepMm * 0.9), 0.0});
    ++out.steps_used;

    peak = std::max(peak, env.signal()[kTz]);
    if (i >= p.settle_steps && traveled_mm > 0.5 * len_mm) {
      err_sum += ref - env.signal()[kTz];
      ++err_count;
    }
    if (!env.state().in_contact) {
      if (++loss > p.contact_loss_dwell) {
        out.status = SkillStatus::failed;
        if (peak_signal) *peak_signal = peak;
        if (steady_abs_err) *steady_abs_err = err_count ? std::abs(err_sum / err_count) : 1e300;
        return out;
      }
    } else {
      loss = 0;
    }
  }

  const double steady = err_count ? std::abs(err_sum / err_count) : 1e300;
  if (steady_abs_err) *steady_abs_err = steady;
  if (peak_signal) *peak_signal = peak;
  const bool covered = is_success(env.scene(), env.state());
  out.status = covered && steady <= 0.05 * ref ? SkillStatus::succeeded : SkillStatus::failed;
  return out;
}

namespace {

// directions in clockwise order: N, E, S, W
constexpr int kDr[4] = {-1, 0, 1, 0};
constexpr int kDc[4] = {0, 1, 0, -1};

std::vector<int> direction_priority(const PolicyParams& p, int r, int c, int goal_r, int goal_c) {
  int primary = 1;  // E
  if (p.maze_priority == "fixed-nesw") {
    primary = 0;
  } else {
    const int dr = goal_r - r, dc = goal_c - c;
    // toward-goal axis first; column moves win ties
    if (std::abs(dc) >= std::abs(dr) && dc != 0) {
      primary = dc > 0 ? 1 : 3;
    } else if (dr != 0) {
      primary = dr > 0 ? 2 : 0;
    }
  }
  std::vector<int> order(4);
  for (int i = 0; i < 4; ++i) order[static_cast<std::size_t>(i)] = (primary + i) % 4;
  return order;
}

// collision watch for a probe along direction d: the wall reaction acts
// against the motion on the matching axis
ThresholdTrigger make_collision_trigger(const TaskEnv& env, int dir) {
  const PolicyParams& p = env.params();
  const int axis = (dir == 1 || dir == 3) ? kTx : kTy;
  const double motion_sign = (dir == 1 || dir == 2) ? 1.0 : -1.0;
  const double level = env.scaled_level(p.collision_level, axis);
  if (motion_sign > 0) {
    return ThresholdTrigger("tau1", axis, -level, ThresholdTrigger::Direction::falling,
                            p.hysteresis_frac * level, 2);
  }
  return ThresholdTrigger("tau1", axis, level, ThresholdTrigger::Direction::rising,
                          p.hysteresis_frac * level, 2);
}

// step the effector toward a world target in the xy plane
bool move_toward(TaskEnv& env, const Vec3& target, double step_mm) {
  Vec3 d = target - env.state().pose.translation();
  d.z() = 0.0;
  if (d.norm() * 1000.0 < 0.05) return true;
  env.env_step(MotionCommand{clamp_step(d, step_mm), 0.0});
  return false;
}

}  // namespace

SkillOutcome maze_explore(TaskEnv& env, MazeMemory* memory) {
  const PolicyParams& p = env.params();
  const MazeGeometry& maze = env.scene().maze;
  MazeMemory local;
  MazeMemory& mem = memory ? *memory : local;

  int r = maze.start_r, c = maze.start_c;
  mem.visited.insert({r, c});
  mem.path.push_back({r, c});
  mem.escape_nodes.push_back({r, c});

  SkillOutcome out;
  const int axis_for_dir[4] = {kTy, kTx, kTy, kTx};

  while (!env.budget_exhausted()) {
    if (r == maze.goal_r && c == maze.goal_c) {
      env.push_event({0, "goal", r, c, -1, 0.0});
      out.status = SkillStatus::succeeded;
      out.steps_used = env.steps();
      return out;
    }

    int chosen = -1;
    for (int dir : direction_priority(p, r, c, maze.goal_r, maze.goal_c)) {
      if (mem.dead_directions[{r, c}].count(dir)) continue;
      const int nr = r + kDr[dir], nc = c + kDc[dir];
      if (!maze.in_bounds(nr, nc)) continue;  // grid edge, not worth probing
      if (mem.visited.count({nr, nc})) continue;
      chosen = dir;
      break;
    }

    if (chosen < 0) {
      // exhausted: backtrack along the escape stack
      if (mem.escape_nodes.size() <= 1) {
        out.status = SkillStatus::failed;
        out.steps_used = env.steps();
        return out;
      }
      mem.escape_nodes.pop_back();
      const auto [pr, pc] = mem.escape_nodes.back();
      env.push_event({0, "backtrack", pr, pc, -1, 0.0});
      const Vec3 target = maze.cell_center(pr, pc);
      for (int i = 0; i < 80 && !move_toward(env, target, p.probe_step_mm); ++i) {
      }
      r = pr;
      c = pc;
      mem.path.push_back({r, c});
      continue;
    }

    const int nr = r + kDr[chosen], nc = c + kDc[chosen];
    env.push_event({0, "probe", r, c, chosen, 0.0});
    ThresholdTrigger watch = make_collision_trigger(env, chosen);
    const Vec3 target = maze.cell_center(nr, nc);
    const Vec3 home = maze.cell_center(r, c);
    const int axis = axis_for_dir[chosen];

    bool collided = false, arrived = false;
    for (int i = 0; i < 60 && !env.budget_exhausted(); ++i) {
      arrived = move_toward(env, target, p.probe_step_mm);
      if (arrived) break;
      if (watch.update(env.signal()[axis])) {
        collided = true;
        break;
      }
    }

    if (collided) {
      env.push_event({0, "collision", r, c, chosen, env.signal()[axis]});
      // force-monitored reverse retreat to the safe level
      const double safe = env.scaled_level(p.safe_level, axis);
      for (int i = 0; i < p.retreat_budget; ++i) {
        const bool at_home = move_toward(env, home, p.probe_step_mm);
        if (std::abs(env.signal()[axis]) < safe && at_home) break;
        if (at_home) env.env_step(MotionCommand{});  // settle in place
      }
      env.push_event({0, "retreat_done", r, c, chosen, env.signal()[axis]});
      mem.dead_directions[{r, c}].insert(chosen);
      env.push_event({0, "prune", r, c, chosen, 0.0});
      continue;
    }
    if (!arrived) {
      out.status = SkillStatus::failed;  // could not reach nor collide: jammed
      out.steps_used = env.steps();
      return out;
    }
    r = nr;
    c = nc;
    mem.visited.insert({r, c});
    mem.path.push_back({r, c});
    mem.escape_nodes.push_back({r, c});
    env.push_event({0, "move", r, c, chosen, 0.0});
  }
  out.status = SkillStatus::failed;
  out.steps_used = env.steps();
  return out;
}

namespace {

void lift_to(TaskEnv& env, double z_target_m) {
  for (int i = 0; i < 2000 && env.state().pose.translation().z() < z_target_m; ++i) {
    env.env_step(MotionCommand{Vec3(0, 0, 0.0002), 0.0});
  }
}

void rotate_by(TaskEnv& env, double yaw_rad) {
  const int steps = static_cast<int>(std::ceil(std::abs(yaw_rad) / (kMaxYawStepRad * 0.98)));
  const double dy = yaw_rad / steps;
  for (int i = 0; i < steps; ++i) env.env_step(MotionCommand{Vec3::Zero(), dy});
}

void translate_to_xy(TaskEnv& env, const Vec3& target) {
  for (int i = 0; i < 4000; ++i) {
    Vec3 d = target - env.state().pose.translation();
    d.z() = 0.0;
    if (d.norm() * 1000.0 < 0.05) return;
    env.env_step(MotionCommand{clamp_step(d, kMaxStepMm * 0.9), 0.0});
  }
}

void apply_start_offset(TaskEnv& env, TaskKind kind) {
  const PolicyParams& p = env.params();
  Rng& rng = env.rng();
  double radius_mm = 0.0;
  if (kind == TaskKind::peg || kind == TaskKind::usb || kind == TaskKind::desk) {
    // start clear of the hole mouth so the approach lands on the surface
    double lo = p.start_offset_min_mm;
    if (kind == TaskKind::usb) {
      lo = std::max(lo, env.scene().usb.capture_halfwidth_mm + 0.5);
    } else {
      lo = std::max(lo, env.scene().peg.clearance_mm + 0.3);
    }
    radius_mm = rng.uniform(lo, std::max(p.start_offset_max_mm, lo + 0.1));
  } else if (kind == TaskKind::screw) {
    radius_mm = rng.uniform(0.0, 1.5);
  } else if (kind == TaskKind::wipe) {
    radius_mm = rng.uniform(0.0, 1.0);
  } else {
    return;
  }
  const double angle = rng.uniform(0.0, kTwoPi);
  EffectorState& s = env.mutable_state();
  const Vec3 off(radius_mm * std::cos(angle) / 1000.0, radius_mm * std::sin(angle) / 1000.0, 0.0);
  s.pose = Pose(s.pose.rotation(), s.pose.translation() + off);
}

void require_scene(TaskKind kind, const ContactScene& scene) {
  const SceneKind want = [&] {
    switch (kind) {
      case TaskKind::peg:
      case TaskKind::desk: return SceneKind::peg;
      case TaskKind::usb: return SceneKind::usb;
      case TaskKind::screw: return SceneKind::screw;
      case TaskKind::wipe: return SceneKind::whiteboard;
      case TaskKind::maze: return SceneKind::maze;
    }
    return SceneKind::peg;
  }();
  if (scene.kind != want) {
    throw std::invalid_argument(std::string("task ") + to_string(kind) +
                                " does not match scene kind " + to_string(scene.kind));
  }
}

SkillOutcome insertion_phases(TaskEnv& env) {
  SkillOutcome a = approach_surface(env);
  if (a.status != SkillStatus::triggered) return a;
  SkillOutcome s = surface_search(env);
  if (s.status != SkillStatus::triggered) return s;
  return compliant_insert(env);
}

}  // namespace

TaskResult run_task(TaskKind kind, const ContactScene& scene, const WristSimulator& sim,
                    const SignalPipelineConfig& pipe_cfg, const PolicyParams& params,
                    std::uint64_t seed, bool keep_trace) {
  require_scene(kind, scene);
  TaskEnv env(scene, sim, pipe_cfg, params, seed);
  apply_start_offset(env, kind);
  env.zero_reference();

  TaskResult res;
  switch (kind) {
    case TaskKind::peg: {
      res.outcome = insertion_phases(env);
      res.success = res.outcome.status == SkillStatus::succeeded;
      break;
    }
    case TaskKind::usb: {
      SkillOutcome ins = approach_surface(env);
      const double z_surface = env.state().pose.translation().z();
      if (ins.status == SkillStatus::triggered) ins = surface_search(env);
      const Vec3 detection = env.state().pose.translation();
      if (ins.status == SkillStatus::triggered) ins = compliant_insert(env);
      if (ins.retry_suggested && ins.status == SkillStatus::failed) {
        // wrong orientation: lift clear, rotate 180 degrees, try again at
        // the detected slot position
        res.retries = 1;
        lift_to(env, env.scene().usb.slot_center.z() + 0.004);
        rotate_by(env, kPi);
        translate_to_xy(env, detection);
        ins = approach_surface(env);
        if (ins.status == SkillStatus::triggered) {
          const double drop_mm =
              (z_surface - env.state().pose.translation().z()) * 1000.0;
          if (drop_mm > params.seat_shallow_limit_mm) {
            // contact came far below the surface height: seated at the bottom
            ins.status = is_success(env.scene(), env.state()) ? SkillStatus::succeeded
                                                              : SkillStatus::failed;
          } else {
            ins = surface_search(env);
            if (ins.status == SkillStatus::triggered) ins = compliant_insert(env);
          }
        }
      }
      res.outcome = ins;
      res.success = ins.status == SkillStatus::succeeded;
      break;
    }
    case TaskKind::screw: {
      SkillOutcome a = approach_surface(env);
      if (a.status != SkillStatus::triggered) {
        res.outcome = a;
        break;
      }
      res.outcome = screw_tighten(env);
      res.success =
          res.outcome.status == SkillStatus::succeeded && is_success(env.scene(), env.state());
      break;
    }
    case TaskKind::desk: {
      SkillOutcome ins = insertion_phases(env);
      if (ins.status != SkillStatus::succeeded) {
        res.outcome = ins;
        break;
      }
      env.push_event({0, "phase", -1, -1, -1, 0.0});
      const ContactScene& next = params.desk_screw_scene;
      env.switch_scene(next);
      lift_to(env, next.screw.axis_top.z() + 0.005);
      translate_to_xy(env, next.screw.axis_top);
      SkillOutcome a = approach_surface(env);
      if (a.status != SkillStatus::triggered) {
        res.outcome = a;
        break;
      }
      res.outcome = screw_tighten(env);
      res.success =
          res.outcome.status == SkillStatus::succeeded && is_success(env.scene(), env.state());
      break;
    }
    case TaskKind::wipe: {
      SkillOutcome a = approach_surface(env);
      if (a.status != SkillStatus::triggered) {
        res.outcome = a;
        break;
      }
      res.outcome = pid_wipe(env, &res.wipe_steady_abs_err, &res.wipe_peak_signal);
      res.success = res.outcome.status == SkillStatus::succeeded;
      break;
    }
    case TaskKind::maze: {
      res.outcome = maze_explore(env);
      res.success = res.outcome.status == SkillStatus::succeeded;
      break;
    }
  }

  res.steps = env.steps();
  res.events = env.events();
  res.final_state = env.state();
  if (keep_trace) res.trace = env.pipeline().take_trace();
  return res;
}

BatchSummary run_task_batch(TaskKind kind, const ContactScene& scene, const WristSimulator& sim,
                            const SignalPipelineConfig& pipe_cfg, const PolicyParams& params,
                            int trials, std::uint64_t root_seed, bool parallel) {
  BatchSummary summary;
  summary.trials = trials;
  summary.results.resize(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < trials; ++i) {
    summary.results[static_cast<std::size_t>(i)] =
        run_task(kind, scene, sim, pipe_cfg, params,
                 derive_seed(root_seed, static_cast<std::uint64_t>(i)), false);
  }
  for (const TaskResult& r : summary.results) summary.successes += r.success ? 1 : 0;
  return summary;
}

MazeAudit audit_maze_events(const std::vector<PolicyEvent>& events) {
  MazeAudit audit;
  std::set<std::tuple<int, int, int>> pruned;
  bool awaiting_retreat = false;
  for (const PolicyEvent& e : events) {
    if (e.type == "probe") {
      if (awaiting_retreat) audit.retreat_after_every_collision = false;
      if (pruned.count({e.r, e.c, e.dir})) audit.no_pruned_reattempt = false;
    } else if (e.type == "collision") {
      ++audit.collisions;
      awaiting_retreat = true;
    } else if (e.type == "retreat_done") {
      ++audit.retreats;
      awaiting_retreat = false;
    } else if (e.type == "prune") {
      pruned.insert({e.r, e.c, e.dir});
    }
  }
  if (awaiting_retreat) audit.retreat_after_every_collision = false;
  return audit;
}

}  // namespace shapeforce
