#include <cmath>

#include "doctest.h"
#include "shapeforce/contact.hpp"
#include "shapeforce/rng.hpp"

using namespace shapeforce;

TEST_CASE("whiteboard penalty contact") {
  ContactScene scene = default_whiteboard_scene();

  SUBCASE("5 mm above the plane: no wrench") {
    EffectorState s;
    s.pose = Pose::from_translation(Vec3(0.01, 0, 0.005));
    const Wrench w = contact_wrench(scene, s);
    CHECK(w.as_vector().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("0.5 mm static penetration gives 5 N along the normal") {
    EffectorState s;
    s.pose = Pose::from_translation(Vec3(0.01, 0, -0.0005));
    const Wrench w = contact_wrench(scene, s);
    CHECK(w.force_n().z() == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(w.force_n().head<2>().norm() == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("damping adds to the static force while pressing") {
    EffectorState s;
    s.pose = Pose::from_translation(Vec3(0.01, 0, -0.0005));
    s.velocity_mm_s = Vec3(0, 0, -2.0);
    const Wrench w = contact_wrench(scene, s);
    CHECK(w.force_n().z() == doctest::Approx(5.0 + 0.5 * 2.0).epsilon(1e-9));
  }

  SUBCASE("repeated descent converges to a steady wrench") {
    EffectorState s;
    s.pose = Pose::from_translation(Vec3(0.01, 0, 0.002));
    double prev = -1.0, cur = -1.0;
    for (int i = 0; i < 80; ++i) {
      const StepResult r = step(scene, s, MotionCommand{Vec3(0, 0, -0.0002), 0.0}, 0.05);
      s = r.state;
      prev = cur;
      cur = r.wrench.force_n().z();
    }
    CHECK(cur == doctest::Approx(prev).epsilon(1e-9));
    CHECK(cur == doctest::Approx(scene.contact_stiffness_n_per_mm * scene.max_penetration_mm)
                     .epsilon(1e-9));
  }

  SUBCASE("penalty force is monotone in penetration depth") {
    double last = -1.0;
    for (double pen_mm = 0.05; pen_mm <= 1.0; pen_mm += 0.05) {
      EffectorState s;
      s.pose = Pose::from_translation(Vec3(0.01, 0, -pen_mm / 1000.0));
      const double f = contact_wrench(scene, s).force_n().norm();
      CHECK(f > last);
      last = f;
    }
  }

  SUBCASE("tilt above 15 degrees rejected") {
    CHECK_THROWS_AS(default_whiteboard_scene(20.0).validate(), std::invalid_argument);
    CHECK_NOTHROW(default_whiteboard_scene(10.0).validate());
  }
}

TEST_CASE("peg scene") {
  ContactScene scene = default_peg_scene();

  SUBCASE("centered peg descends with no lateral force and modest Fz") {
    EffectorState s = initial_effector(scene);
    double max_lat = 0.0, max_fz = 0.0;
    for (int i = 0; i < 400; ++i) {
      const StepResult r = step(scene, s, MotionCommand{Vec3(0, 0, -0.00005), 0.0}, 0.05);
      s = r.state;
      max_lat = std::max(max_lat, r.wrench.force_n().head<2>().norm());
      max_fz = std::max(max_fz, std::abs(r.wrench.force_n().z()));
    }
    CHECK(max_lat < 0.5);
    CHECK(max_fz < 20.0);
    CHECK(s.insertion_depth_mm > 9.0);
  }

  SUBCASE("offset peg rests on the surface and does not enter") {
    EffectorState s = initial_effector(scene);
    s.pose = Pose::from_translation(s.pose.translation() + Vec3(0.003, 0, 0));
    for (int i = 0; i < 300; ++i) {
      s = step(scene, s, MotionCommand{Vec3(0, 0, -0.0001), 0.0}, 0.05).state;
    }
    CHECK(s.insertion_depth_mm == 0.0);
    const double pen_mm = (scene.peg.hole_center.z() - s.pose.translation().z()) * 1000.0;
    CHECK(pen_mm <= scene.max_penetration_mm + 1e-9);
    CHECK(contact_wrench(scene, s).force_n().z() > 0.0);
  }

  SUBCASE("wall interference pushes back toward the hole axis") {
    EffectorState s = initial_effector(scene);
    // start inside the hole, then drift laterally
    s.pose = Pose::from_translation(scene.peg.hole_center + Vec3(0, 0, -0.004));
    s.insertion_depth_mm = 4.0;
    for (int i = 0; i < 30; ++i) {
      s = step(scene, s, MotionCommand{Vec3(0.0002, 0, 0), 0.0}, 0.05).state;
    }
    const Wrench w = contact_wrench(scene, s);
    CHECK(w.force_n().x() < 0.0);  // reaction toward the axis
    // lateral clip keeps the interference bounded
    const double off_mm = (s.pose.translation() - scene.peg.hole_center).head<2>().norm() * 1e3;
    CHECK(off_mm <= scene.peg.clearance_mm + scene.max_penetration_mm + 1e-9);
  }

  SUBCASE("bottom stop carries the peg") {
    EffectorState s = initial_effector(scene);
    s.pose = Pose::from_translation(scene.peg.hole_center + Vec3(0, 0, -0.0099));
    s.insertion_depth_mm = 9.9;
    for (int i = 0; i < 50; ++i) {
      s = step(scene, s, MotionCommand{Vec3(0, 0, -0.0002), 0.0}, 0.05).state;
    }
    CHECK(s.insertion_depth_mm <= scene.peg.depth_mm + scene.max_penetration_mm + 1e-9);
    CHECK(contact_wrench(scene, s).force_n().z() > 0.0);
    CHECK(is_success(scene, s));
  }

  SUBCASE("fresh scene does not report success") {
    CHECK_FALSE(is_success(scene, initial_effector(scene)));
  }
}

TEST_CASE("usb two-level stop") {
  ContactScene scene = default_usb_scene();

  SUBCASE("wrong orientation saturates at the shallow stop") {
    EffectorState s = initial_effector(scene);  // yaw 0, correct is pi
    double fz_at_stop = 0.0;
    for (int i = 0; i < 600; ++i) {
      const StepResult r = step(scene, s, MotionCommand{Vec3(0, 0, -0.00005), 0.0}, 0.05);
      s = r.state;
      fz_at_stop = r.wrench.force_n().z();
    }
    CHECK(s.insertion_depth_mm <= scene.usb.shallow_depth_mm + scene.max_penetration_mm + 1e-9);
    CHECK(fz_at_stop > 0.0);
    CHECK_FALSE(is_success(scene, s));
  }

  SUBCASE("correct orientation seats at full depth") {
    EffectorState s = initial_effector(scene);
    s.gripper_yaw = scene.usb.correct_yaw_rad;
    for (int i = 0; i < 600; ++i) {
      s = step(scene, s, MotionCommand{Vec3(0, 0, -0.00005), 0.0}, 0.05).state;
    }
    CHECK(s.insertion_depth_mm >= scene.usb.full_depth_mm - 0.5);
    CHECK(is_success(scene, s));
  }
}

TEST_CASE("screw joint torque model") {
  SUBCASE("torque ramps with engagement and the cap follows the thread") {
    ContactScene scene = default_screw_scene();
    EffectorState s = initial_effector(scene);
    // press onto the cap
    for (int i = 0; i < 120; ++i) {
      s = step(scene, s, MotionCommand{Vec3(0, 0, -0.00005), 0.0}, 0.05).state;
    }
    CHECK(contact_wrench(scene, s).force_n().z() > 0.0);
    double last_torque = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double dz = scene.screw.pitch_mm_per_rev * 0.05 / (2 * M_PI) / 1000.0;
      const StepResult r = step(scene, s, MotionCommand{Vec3(0, 0, -dz), 0.05}, 0.05);
      s = r.state;
      if (i % 100 == 99) {
        const double t = -r.wrench.torque_nm().z();
        CHECK(t > last_torque);
        last_torque = t;
      }
    }
    CHECK(s.engagement_rev > 0.3);
  }

  SUBCASE("free-spinning joint never builds torque") {
    ContactScene scene = default_screw_scene();
    scene.screw.friction_nm_per_rev = 0.0;
    EffectorState s = initial_effector(scene);
    for (int i = 0; i < 120; ++i) {
      s = step(scene, s, MotionCommand{Vec3(0, 0, -0.00005), 0.0}, 0.05).state;
    }
    for (int i = 0; i < 2000; ++i) {
      const double dz = scene.screw.pitch_mm_per_rev * 0.05 / (2 * M_PI) / 1000.0;
      const StepResult r = step(scene, s, MotionCommand{Vec3(0, 0, -dz), 0.05}, 0.05);
      s = r.state;
      if (s.engagement_rev <= scene.screw.full_engagement_rev) {
        CHECK(std::abs(r.wrench.torque_nm().z()) == 0.0);
      }
    }
  }
}

TEST_CASE("maze wall reactions") {
  ContactScene scene = default_maze_scene();
  scene.validate();

  SUBCASE("free corridor move produces no wrench") {
    EffectorState s = initial_effector(scene);
    // (0,0) -> (0,1) is free in the default maze
    const Vec3 target = scene.maze.cell_center(0, 1);
    for (int i = 0; i < 40; ++i) {
      Vec3 d = target - s.pose.translation();
      d.z() = 0;
      if (d.norm() < 1e-5) break;
      if (d.norm() > 0.001) d *= 0.001 / d.norm();
      const StepResult r = step(scene, s, MotionCommand{d, 0.0}, 0.05);
      s = r.state;
      CHECK(r.wrench.as_vector().cwiseAbs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("wall transition produces a lateral reaction and clips") {
    EffectorState s = initial_effector(scene);
    // (0,0) -> (1,0) is a wall below the start
    Wrench w;
    for (int i = 0; i < 40; ++i) {
      const StepResult r = step(scene, s, MotionCommand{Vec3(0, 0.001, 0), 0.0}, 0.05);
      s = r.state;
      w = r.wrench;
    }
    CHECK(w.force_n().y() < 0.0);  // pushes back toward the start cell
    CHECK(std::abs(w.force_n().y()) <=
          scene.contact_stiffness_n_per_mm * scene.max_penetration_mm + 1e-6);
  }

  SUBCASE("flood-fill oracle on the default maze and a walled-off goal") {
    CHECK(maze_solvable(scene.maze));
    MazeGeometry blocked = scene.maze;
    blocked.walls[5][5] = 1;
    blocked.walls[5][6] = 1;
    blocked.walls[6][5] = 1;
    CHECK_FALSE(maze_solvable(blocked));
  }

  SUBCASE("generator only emits solvable mazes") {
    Rng rng(91);
    for (int i = 0; i < 20; ++i) {
      const MazeGeometry m = generate_solvable_maze(7, 7, 0.3, rng);
      CHECK(maze_solvable(m));
    }
  }
}

TEST_CASE("step command validation") {
  ContactScene scene = default_peg_scene();
  EffectorState s = initial_effector(scene);
  CHECK_THROWS_AS(step(scene, s, MotionCommand{Vec3(0.002, 0, 0), 0.0}, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(step(scene, s, MotionCommand{Vec3::Zero(), 0.3}, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(step(scene, s, MotionCommand{}, 0.0), std::invalid_argument);

  SUBCASE("zero command leaves state and wrench unchanged") {
    const StepResult r1 = step(scene, s, MotionCommand{}, 0.05);
    const StepResult r2 = step(scene, r1.state, MotionCommand{}, 0.05);
    CHECK(r1.state.pose.is_approx(r2.state.pose, 0.0));
    CHECK((r1.wrench.as_vector() - r2.wrench.as_vector()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("scene validation catches bad fixtures") {
  ContactScene peg = default_peg_scene();
  peg.peg.clearance_mm = 0.0;
  CHECK_THROWS_AS(peg.validate(), std::invalid_argument);

  ContactScene usb = default_usb_scene();
  usb.usb.shallow_depth_mm = 9.0;
  CHECK_THROWS_AS(usb.validate(), std::invalid_argument);

  ContactScene maze = default_maze_scene();
  maze.maze.walls[0][0] = 1;  // start inside a wall
  CHECK_THROWS_AS(maze.validate(), std::invalid_argument);
}

TEST_CASE("peg success flips exactly at the seating depth") {
  ContactScene scene = default_peg_scene();
  EffectorState s = initial_effector(scene);
  bool was_success = false;
  for (int i = 0; i < 400; ++i) {
    s = step(scene, s, MotionCommand{Vec3(0, 0, -0.00005), 0.0}, 0.05).state;
    const bool now = is_success(scene, s);
    CHECK(now == (s.insertion_depth_mm >= scene.peg.depth_mm - scene.peg.clearance_mm));
    if (was_success) CHECK(now);  // no flapping on the way down
    was_success = now;
  }
  CHECK(was_success);
}
