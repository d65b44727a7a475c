#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shapeforce/contact.hpp"
#include "shapeforce/sensing.hpp"
#include "shapeforce/wrist.hpp"

namespace shapeforce {

enum class TaskKind { peg, usb, screw, desk, wipe, maze };

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

enum class SkillStatus { running, triggered, succeeded, failed };

const char* to_string(SkillStatus status);

/// Signal-level event detector with debounce and hysteresis. Fires at most
/// once per arm cycle; it re-arms only after the signal retreats past
/// level -/+ hysteresis.
class ThresholdTrigger {
 public:
  enum class Direction { rising, falling };

  ThresholdTrigger(std::string id, int component, double level, Direction direction,
                   double hysteresis = 0.0, int debounce = 1);

  /// Feeds one sample of the watched component; true exactly when firing.
  bool update(double value);
  void reset();

  const std::string& id() const { return id_; }
  int component() const { return component_; }
  double level() const { return level_; }
  int fire_count() const { return fire_count_; }

 private:
  std::string id_;
  int component_;
  double level_;
  Direction direction_;
  double hysteresis_;
  int debounce_;
  bool armed_ = true;
  int consecutive_ = 0;
  int fire_count_ = 0;
};

struct SkillOutcome {
  SkillStatus status = SkillStatus::running;
  std::optional<std::string> fired_trigger;
  int steps_used = 0;
  bool retry_suggested = false;  // usb shallow stop asks for a 180-degree retry
};

/// Runs a trigger over a recorded component series; triggered at the first
/// post-debounce sample, running if the stream ends quiet.
SkillOutcome run_trigger(ThresholdTrigger& trigger, std::span<const double> series);

struct PolicyEvent {
  int step = 0;
  std::string type;  // probe, collision, retreat_done, prune, move, backtrack, goal, phase
  int r = -1, c = -1, dir = -1;
  double value = 0.0;
};

struct MazeMemory {
  std::set<std::pair<int, int>> visited;
  std::map<std::pair<int, int>, std::set<int>> dead_directions;
  std::vector<std::pair<int, int>> escape_nodes;  // DFS stack, pops only on backtrack
  std::vector<std::pair<int, int>> path;          // traversal order, for audits
};

struct PidGains {
  double kp = 0.2;
  double ki = 0.05;
  double kd = 0.0;
};

/// Committed fixtures for the skill library; thresholds are in signal units
/// (mm for translation components, rad for rotations).
struct PolicyParams {
  double contact_level = 0.30;    // tau1: rising z on surface contact
  double hole_drop_level = 0.15;  // tau2: falling z when the hole is found
  double seat_level = 0.50;       // tau3: rising z at seating
  double jam_level = 2.50;        // axial safety bound
  double tighten_level = 0.25;    // |theta_z| at the tightened stop
  double collision_level = 0.35;  // maze wall hit, lateral
  double safe_level = 0.10;       // maze retreat target
  int debounce = 3;
  int drop_debounce = 3;  // shallow stops leave only a short free-fall window
  double hysteresis_frac = 0.10;

  std::string search_pattern = "spiral";  // or "raster"
  double search_envelope_mm = 5.0;
  double spiral_pitch_mm = 0.5;
  double search_step_mm = 0.2;
  double press_signal = 0.60;  // regulated z signal while sliding on the surface
  double press_gain = 0.15;

  double approach_step_mm = 0.1;
  double descend_step_mm = 0.05;
  double lateral_gain = 0.5;
  double insert_wait_level_frac = 0.5;  // arm seating only once the signal has dropped
  double seat_shallow_limit_mm = 2.0;   // usb: seated shallower than this suggests retry

  double yaw_step_rad = 0.02;
  double screw_pitch_mm_per_rev = 1.0;
  double screw_min_travel_mm = 1.0;  // torque earlier than this depth means cross-thread

  PidGains pid;
  double wipe_reference = 1.0;
  double stroke_step_mm = 0.5;
  int settle_steps = 60;
  int contact_loss_dwell = 40;

  double probe_step_mm = 1.0;
  int retreat_budget = 60;
  std::string maze_priority = "goal-clockwise";  // or "fixed-nesw"

  double start_offset_min_mm = 0.8;
  double start_offset_max_mm = 3.5;

  double dt_s = 0.05;
  int step_budget = 30000;
  std::string sensor_mode = "shapeforce";  // or "ft": thresholds on the true wrench
  Vec6 threshold_scale = Vec6::Ones();     // recalibration shim, per component

  ContactScene desk_screw_scene;  // second phase of the desk assembly

  PolicyParams();
};

/// Couples a contact scene, the simulated wrist, and the sensing pipeline
/// into the sense-decide-act loop the skills run on.
class TaskEnv {
 public:
  TaskEnv(ContactScene scene, WristSimulator sim, SignalPipelineConfig pipe_cfg,
          PolicyParams params, std::uint64_t seed);

  void zero_reference();
  void env_step(const MotionCommand& cmd);

  const Vec6& signal() const { return signal_; }
  const EffectorState& state() const { return state_; }
  EffectorState& mutable_state() { return state_; }
  const ContactScene& scene() const { return scene_; }
  const PolicyParams& params() const { return params_; }
  const Wrench& last_wrench() const { return wrench_; }
  int steps() const { return steps_; }
  bool budget_exhausted() const { return steps_ >= params_.step_budget; }

  /// Swaps in the next phase of a sequenced task; effector pose persists.
  void switch_scene(ContactScene next);

  double scaled_level(double level, int component) const;

  void push_event(PolicyEvent e);
  const std::vector<PolicyEvent>& events() const { return events_; }

  SignalPipeline& pipeline() { return pipeline_; }
  const WristSimulator& simulator() const { return sim_; }
  Rng& rng() { return rng_; }

 private:
  ContactScene scene_;
  WristSimulator sim_;
  SignalPipeline pipeline_;
  PolicyParams params_;
  Rng rng_;
  EffectorState state_;
  Wrench wrench_;
  Vec6 signal_ = Vec6::Zero();
  double t_ = 0.0;
  int steps_ = 0;
  std::vector<PolicyEvent> events_;
};

// Skill library. Preconditions follow the task state machines in run_task.
SkillOutcome approach_surface(TaskEnv& env);
SkillOutcome surface_search(TaskEnv& env);
SkillOutcome compliant_insert(TaskEnv& env);
SkillOutcome screw_tighten(TaskEnv& env);
SkillOutcome pid_wipe(TaskEnv& env, double* steady_abs_err = nullptr,
                      double* peak_signal = nullptr);
SkillOutcome maze_explore(TaskEnv& env, MazeMemory* memory = nullptr);

struct TaskResult {
  SkillOutcome outcome;
  bool success = false;
  int retries = 0;
  int steps = 0;
  double wipe_steady_abs_err = 0.0;
  double wipe_peak_signal = 0.0;
  std::vector<PolicyEvent> events;
  std::vector<TraceRecord> trace;
  EffectorState final_state;
};

TaskResult run_task(TaskKind kind, const ContactScene& scene, const WristSimulator& sim,
                    const SignalPipelineConfig& pipe_cfg, const PolicyParams& params,
                    std::uint64_t seed, bool keep_trace = true);

struct BatchSummary {
  int trials = 0;
  int successes = 0;
  std::vector<TaskResult> results;  // traces dropped
  double success_rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

/// Independent trials with per-trial seeds derived from the root seed;
/// results are identical whether run serially or OpenMP-parallel.
BatchSummary run_task_batch(TaskKind kind, const ContactScene& scene, const WristSimulator& sim,
                            const SignalPipelineConfig& pipe_cfg, const PolicyParams& params,
                            int trials, std::uint64_t root_seed, bool parallel = true);

struct MazeAudit {
  int collisions = 0;
  int retreats = 0;
  bool retreat_after_every_collision = true;
  bool no_pruned_reattempt = true;
};

MazeAudit audit_maze_events(const std::vector<PolicyEvent>& events);

}  // namespace shapeforce
