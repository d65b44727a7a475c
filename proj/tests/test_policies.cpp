#include <cmath>
#include <vector>

#include "doctest.h"
#include "shapeforce/policies.hpp"

using namespace shapeforce;

namespace {

SignalPipelineConfig pipeline_config_for(const WristSimulator& sim) {
  SignalPipelineConfig cfg;
  cfg.extrinsic = sim.camera().extrinsic;
  cfg.alignment = sim.alignment();
  return cfg;
}

TaskResult run_default(TaskKind kind, const ContactScene& scene, std::uint64_t seed,
                       const PolicyParams& params = PolicyParams{}) {
  const WristSimulator sim = default_simulator(true);
  return run_task(kind, scene, sim, pipeline_config_for(sim), params, seed);
}

}  // namespace

TEST_CASE("threshold trigger") {
  SUBCASE("flat signal below a rising level never fires") {
    ThresholdTrigger t("t", kTz, 1.0, ThresholdTrigger::Direction::rising, 0.1, 3);
    std::vector<double> flat(200, 0.4);
    const SkillOutcome out = run_trigger(t, flat);
    CHECK(out.status == SkillStatus::running);
    CHECK(t.fire_count() == 0);
  }

  SUBCASE("monotone ramp fires exactly once at the first post-debounce sample") {
    ThresholdTrigger t("t", kTz, 1.0, ThresholdTrigger::Direction::rising, 0.1, 3);
    std::vector<double> ramp;
    for (int i = 0; i < 100; ++i) ramp.push_back(0.025 * i);  // crosses 1.0 at i=41
    const SkillOutcome out = run_trigger(t, ramp);
    CHECK(out.status == SkillStatus::triggered);
    CHECK(out.steps_used == 44);  // 41, 42, 43 beyond level; fires on the third
    // the ramp keeps rising, so the trigger never re-arms
    for (int i = 44; i < 100; ++i) CHECK_FALSE(t.update(ramp[static_cast<std::size_t>(i)]));
    CHECK(t.fire_count() == 1);
  }

  SUBCASE("oscillation inside the hysteresis band fires at most once") {
    ThresholdTrigger t("t", kTz, 1.0, ThresholdTrigger::Direction::rising, 0.2, 1);
    int fires = 0;
    for (int i = 0; i < 400; ++i) {
      const double v = 1.0 + ((i % 2 == 0) ? 0.1 : -0.1);  // +/- hysteresis/2
      if (t.update(v)) ++fires;
    }
    CHECK(fires == 1);
  }

  SUBCASE("retreat past hysteresis re-arms the trigger") {
    ThresholdTrigger t("t", kTz, 1.0, ThresholdTrigger::Direction::rising, 0.2, 1);
    CHECK(t.update(1.1));
    CHECK_FALSE(t.update(1.2));
    CHECK_FALSE(t.update(0.75));  // retreats below 0.8: re-arms, does not fire
    CHECK(t.update(1.05));
    CHECK(t.fire_count() == 2);
  }

  SUBCASE("falling direction") {
    ThresholdTrigger t("t", kTz, -0.5, ThresholdTrigger::Direction::falling, 0.05, 2);
    CHECK_FALSE(t.update(-0.6));
    CHECK(t.update(-0.7));
  }
}

TEST_CASE("trigger monotonicity: raising a rising level never fires earlier") {
  std::vector<double> series;
  Rng rng(101);
  double v = 0.0;
  for (int i = 0; i < 300; ++i) {
    v += rng.uniform(-0.02, 0.05);
    series.push_back(v);
  }
  int prev_step = 0;
  for (double level : {0.5, 1.0, 1.5, 2.0}) {
    ThresholdTrigger t("t", kTz, level, ThresholdTrigger::Direction::rising, 0.0, 3);
    const SkillOutcome out = run_trigger(t, series);
    if (out.status != SkillStatus::triggered) break;
    CHECK(out.steps_used >= prev_step);
    prev_step = out.steps_used;
  }
}

TEST_CASE("peg task succeeds across randomized offsets") {
  const ContactScene scene = default_peg_scene();
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TaskResult r = run_default(TaskKind::peg, scene, 1000 + seed);
    if (r.success) ++ok;
  }
  CHECK(ok >= 19);
}

TEST_CASE("surface search detects the hole near its true center") {
  const WristSimulator sim = default_simulator(true);
  const ContactScene scene = default_peg_scene();
  const PolicyParams params;
  TaskEnv env(scene, sim, pipeline_config_for(sim), params, 777);
  // start 3 mm off the hole axis
  EffectorState& s = env.mutable_state();
  s.pose = Pose(s.pose.rotation(), s.pose.translation() + Vec3(0.003, 0, 0));
  env.zero_reference();
  REQUIRE(approach_surface(env).status == SkillStatus::triggered);
  const SkillOutcome found = surface_search(env);
  REQUIRE(found.status == SkillStatus::triggered);
  const double off_mm =
      (env.state().pose.translation() - scene.peg.hole_center).head<2>().norm() * 1000.0;
  CHECK(off_mm <= scene.peg.clearance_mm + 1e-6);
}

TEST_CASE("surface search fails when the hole lies outside the envelope") {
  const WristSimulator sim = default_simulator(true);
  const ContactScene scene = default_peg_scene();
  PolicyParams params;
  params.search_envelope_mm = 2.0;
  TaskEnv env(scene, sim, pipeline_config_for(sim), params, 778);
  EffectorState& s = env.mutable_state();
  s.pose = Pose(s.pose.rotation(), s.pose.translation() + Vec3(0.004, 0, 0));
  env.zero_reference();
  REQUIRE(approach_surface(env).status == SkillStatus::triggered);
  CHECK(surface_search(env).status == SkillStatus::failed);
}

TEST_CASE("compliant insert from a slightly tilted start") {
  const WristSimulator sim = default_simulator(true);
  const ContactScene scene = default_peg_scene();
  const PolicyParams params;
  TaskEnv env(scene, sim, pipeline_config_for(sim), params, 779);
  EffectorState& s = env.mutable_state();
  const double tilt = 0.5 * M_PI / 180.0;
  s.pose = Pose(Pose::from_euler_xyz(Vec3(tilt, 0, 0)).rotation(),
                scene.peg.hole_center + Vec3(0, 0, -0.0005));
  s.insertion_depth_mm = 0.5;
  env.zero_reference();
  const SkillOutcome out = compliant_insert(env);
  CHECK(out.status == SkillStatus::succeeded);
  CHECK(is_success(env.scene(), env.state()));
}

TEST_CASE("usb task performs exactly one 180-degree retry") {
  const ContactScene scene = default_usb_scene();  // correct yaw is pi, start at 0
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TaskResult r = run_default(TaskKind::usb, scene, 2000 + seed);
    if (r.success && r.retries == 1) ++ok;
    CHECK(r.retries <= 1);
  }
  CHECK(ok >= 9);
}

TEST_CASE("screw task") {
  SUBCASE("default friction ramp succeeds near the threshold") {
    const TaskResult r = run_default(TaskKind::screw, default_screw_scene(), 3001);
    CHECK(r.success);
    // at the fire the torque signal sits within 10% of the threshold
    CHECK(std::abs(r.final_state.engagement_rev) >=
          default_screw_scene().screw.full_engagement_rev);
  }

  SUBCASE("free-spinning joint fails") {
    ContactScene scene = default_screw_scene();
    scene.screw.friction_nm_per_rev = 0.0;
    scene.screw.seat_ramp_nm_per_rad = 1e-6;  // nothing to push against
    PolicyParams params;
    params.step_budget = 4000;
    const TaskResult r = run_default(TaskKind::screw, scene, 3002, params);
    CHECK_FALSE(r.success);
  }

  SUBCASE("cross-threaded joint is detected and failed") {
    const TaskResult r = run_default(TaskKind::screw, default_screw_scene(true), 3003);
    CHECK_FALSE(r.success);
    CHECK(r.outcome.status == SkillStatus::failed);
  }

  SUBCASE("pre-tightened joint triggers almost immediately") {
    const ContactScene scene = default_screw_scene(false, 3.0);
    PolicyParams params;
    params.screw_min_travel_mm = 0.0;  // operator knows the joint starts seated
    const TaskResult r = run_default(TaskKind::screw, scene, 3004, params);
    CHECK(r.outcome.status == SkillStatus::succeeded);
    CHECK(r.outcome.steps_used < 600);
  }
}

TEST_CASE("pid wipe regulates the contact force") {
  SUBCASE("flat board settles inside the 5 percent band") {
    const TaskResult r = run_default(TaskKind::wipe, default_whiteboard_scene(0.0), 4001);
    CHECK(r.success);
    CHECK(r.wipe_steady_abs_err <= 0.05 * PolicyParams{}.wipe_reference);
    CHECK(r.wipe_peak_signal <= 2.0 * PolicyParams{}.wipe_reference);
  }

  SUBCASE("10-degree tilt holds the same band") {
    const TaskResult r = run_default(TaskKind::wipe, default_whiteboard_scene(10.0), 4002);
    CHECK(r.success);
    CHECK(r.wipe_steady_abs_err <= 0.05 * PolicyParams{}.wipe_reference);
  }

  SUBCASE("zero gains lose the board on a tilt") {
    PolicyParams params;
    params.pid = PidGains{0.0, 0.0, 0.0};
    const TaskResult r = run_default(TaskKind::wipe, default_whiteboard_scene(10.0), 4003, params);
    CHECK_FALSE(r.success);
  }
}

TEST_CASE("maze exploration") {
  SUBCASE("straight corridor goes collision-free") {
    ContactScene scene = default_maze_scene();
    scene.maze.walls = {{0, 0, 0, 0, 0}};
    scene.maze.start_r = 0;
    scene.maze.start_c = 0;
    scene.maze.goal_r = 0;
    scene.maze.goal_c = 4;
    const TaskResult r = run_default(TaskKind::maze, scene, 5001);
    CHECK(r.success);
    const MazeAudit audit = audit_maze_events(r.events);
    CHECK(audit.collisions == 0);
  }

  SUBCASE("default 7x7 maze: solved with clean retreat/prune discipline") {
    const ContactScene scene = default_maze_scene();
    REQUIRE(maze_solvable(scene.maze));  // independent oracle
    const TaskResult r = run_default(TaskKind::maze, scene, 5002);
    CHECK(r.success);
    const MazeAudit audit = audit_maze_events(r.events);
    CHECK(audit.collisions > 0);
    CHECK(audit.retreat_after_every_collision);
    CHECK(audit.no_pruned_reattempt);
    // termination bound: each cell prunes each direction at most once
    const int cells = scene.maze.rows() * scene.maze.cols();
    CHECK(r.steps <= 4 * cells * (60 + PolicyParams{}.retreat_budget));
  }

  SUBCASE("fully walled goal fails after exhausting the stack") {
    ContactScene scene = default_maze_scene();
    scene.maze.walls[5][5] = 1;
    scene.maze.walls[5][6] = 1;
    scene.maze.walls[6][5] = 1;
    REQUIRE_FALSE(maze_solvable(scene.maze));
    const TaskResult r = run_default(TaskKind::maze, scene, 5003);
    CHECK_FALSE(r.success);
    CHECK(r.outcome.status == SkillStatus::failed);
  }
}

TEST_CASE("desk assembly composes insertion and tightening") {
  const TaskResult r = run_default(TaskKind::desk, default_peg_scene(), 6001);
  CHECK(r.success);
  bool phase_switch = false;
  for (const PolicyEvent& e : r.events) phase_switch |= e.type == "phase";
  CHECK(phase_switch);

  SUBCASE("failure in the screw phase fails the task") {
    PolicyParams params;
    params.desk_screw_scene = default_screw_scene(true);  // cross-threaded second phase
    params.desk_screw_scene.screw.axis_top = Vec3(0.05, 0.0, 0.0);
    const TaskResult bad = run_default(TaskKind::desk, default_peg_scene(), 6002, params);
    CHECK_FALSE(bad.success);
  }
}

TEST_CASE("task/scene mismatch rejected") {
  const WristSimulator sim = default_simulator(true);
  CHECK_THROWS_AS(run_task(TaskKind::peg, default_maze_scene(), sim, pipeline_config_for(sim),
                           PolicyParams{}, 1),
                  std::invalid_argument);
}

TEST_CASE("skill determinism: identical seeds produce identical traces") {
  const ContactScene scene = default_peg_scene();
  const TaskResult a = run_default(TaskKind::peg, scene, 7777);
  const TaskResult b = run_default(TaskKind::peg, scene, 7777);
  REQUIRE(a.trace.size() == b.trace.size());
  CHECK(a.success == b.success);
  CHECK(a.steps == b.steps);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK((a.trace[i].filtered_signal.as_vector() - b.trace[i].filtered_signal.as_vector())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("batch runs are identical serial vs parallel") {
  const WristSimulator sim = default_simulator(true);
  const ContactScene scene = default_peg_scene();
  const SignalPipelineConfig cfg = pipeline_config_for(sim);
  const BatchSummary ser = run_task_batch(TaskKind::peg, scene, sim, cfg, PolicyParams{}, 8,
                                          909, false);
  const BatchSummary par = run_task_batch(TaskKind::peg, scene, sim, cfg, PolicyParams{}, 8,
                                          909, true);
  CHECK(ser.successes == par.successes);
  for (int i = 0; i < 8; ++i) {
    CHECK(ser.results[static_cast<std::size_t>(i)].steps ==
          par.results[static_cast<std::size_t>(i)].steps);
  }
}

TEST_CASE("surface search triggers immediately when already over the hole") {
  const WristSimulator sim = default_simulator(true);
  const ContactScene scene = default_peg_scene();
  const PolicyParams params;
  TaskEnv env(scene, sim, pipeline_config_for(sim), params, 881);
  EffectorState& s = env.mutable_state();
  // pressed inside the hole mouth: the drop is the first thing search sees
  s.pose = Pose(s.pose.rotation(), scene.peg.hole_center + Vec3(0, 0, -0.0003));
  s.insertion_depth_mm = 0.3;
  env.zero_reference();
  const SkillOutcome found = surface_search(env);
  CHECK(found.status == SkillStatus::triggered);
  CHECK(found.steps_used < 25);  // a couple of samples of filter lag, no pattern progress
  const double off_mm =
      (env.state().pose.translation() - scene.peg.hole_center).head<2>().norm() * 1000.0;
  CHECK(off_mm <= scene.peg.clearance_mm);
}

TEST_CASE("screw stops within ten percent of the tightening threshold") {
  const TaskResult r = run_default(TaskKind::screw, default_screw_scene(), 3111);
  REQUIRE(r.success);
  REQUIRE_FALSE(r.trace.empty());
  const double final_tz = r.trace.back().filtered_signal.as_vector()[kRz];
  const double level = PolicyParams{}.tighten_level;
  CHECK(std::abs(final_tz) >= level);
  CHECK(std::abs(final_tz) <= 1.10 * level);
}

TEST_CASE("true-wrench baseline mode runs the same state machines") {
  PolicyParams params;
  params.sensor_mode = "ft";
  const TaskResult peg = run_default(TaskKind::peg, default_peg_scene(), 9101, params);
  CHECK(peg.success);
  const TaskResult usb = run_default(TaskKind::usb, default_usb_scene(), 9102, params);
  CHECK(usb.success);
  CHECK(usb.retries == 1);
}
