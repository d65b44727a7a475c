#include <cmath>

#include "doctest.h"
#include "shapeforce/calibration.hpp"
#include "shapeforce/kernels.hpp"
#include "shapeforce/rng.hpp"
#include "shapeforce/wrist.hpp"

using namespace shapeforce;

namespace {

// Noiseless rows from a known stiffness: signal drawn, wrench = K * signal.
PairedDataset exact_dataset(const Mat6& k, int n, std::uint64_t seed) {
  Rng rng(seed);
  PairedDataset data;
  data.rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec6 sig;
    for (int j = 0; j < 3; ++j) sig[j] = rng.uniform(-2, 2);
    for (int j = 3; j < 6; ++j) sig[j] = rng.uniform(-0.2, 0.2);
    data.rows.push_back(
        PairedSample{DeformationSignal::from_vector(sig), Wrench::from_vector(k * sig)});
  }
  return data;
}

}  // namespace

TEST_CASE("estimate_stiffness recovers an exact linear map") {
  const Mat6 k_true = default_stiffness().matrix();
  const FitReport fit = estimate_stiffness(exact_dataset(k_true, 200, 51));
  const double rel_err =
      (fit.k_hat.matrix() - k_true).norm() / k_true.norm();
  CHECK(rel_err < 1e-6);
  for (int i = 0; i < 6; ++i) {
    CHECK(fit.r_squared[i] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.r_squared[i] <= 1.0);
  }
}

TEST_CASE("estimate_stiffness on simulated noisy data meets the fidelity band") {
  WristSimulator sim = default_simulator(true);
  const PairedDataset data =
      kernels::simulate_paired_rows(sim, 5000, 424242, kernels::WrenchRanges{}, true);
  const FitReport fit = estimate_stiffness(data);
  double mean_r2 = 0.0;
  for (int i = 0; i < 6; ++i) {
    CHECK(fit.r_squared[i] >= 0.90);
    mean_r2 += fit.r_squared[i] / 6.0;
  }
  CHECK(mean_r2 >= 0.95);
}

TEST_CASE("rank deficiency is reported with the unexcited direction") {
  // all wrenches along z only: signals excite only the z column
  Rng rng(52);
  PairedDataset data;
  const StiffnessMatrix k = default_stiffness();
  for (int i = 0; i < 100; ++i) {
    const Wrench w(Vec3(0, 0, rng.uniform(-5, 5)), Vec3::Zero());
    data.rows.push_back(PairedSample{deform(k, w), w});
  }
  CHECK_THROWS_AS(estimate_stiffness(data), RankDeficiencyError);
  try {
    estimate_stiffness(data);
  } catch (const RankDeficiencyError& e) {
    CHECK(std::string(e.what()).find("unexcited") != std::string::npos);
    // the null space excludes the z translation axis that was excited
    CHECK(std::abs(e.null_direction[2]) < 0.5);
  }

  SUBCASE("ridge makes a near-deficient fit solvable") {
    // weak excitation on the remaining axes: conditioning is poor but the
    // regularized fit goes through
    Rng jitter(520);
    PairedDataset near = data;
    for (auto& row : near.rows) {
      Vec6 s = row.signal.as_vector();
      for (int i = 0; i < 6; ++i) s[i] += jitter.uniform(-1e-6, 1e-6);
      row.signal = DeformationSignal::from_vector(s);
      row.wrench = Wrench::from_vector(k.matrix() * s);
    }
    CHECK_THROWS_AS(estimate_stiffness(near), RankDeficiencyError);
    CHECK_NOTHROW(estimate_stiffness(near, 1e-6));
  }
}

TEST_CASE("estimate_stiffness requires 36 rows") {
  const PairedDataset small = exact_dataset(Mat6::Identity(), 35, 53);
  CHECK_THROWS_AS(estimate_stiffness(small), std::invalid_argument);
}

TEST_CASE("scale equivariance of the fit") {
  const Mat6 k_true = default_stiffness().matrix();
  PairedDataset data = exact_dataset(k_true, 300, 54);
  // perturb wrenches slightly so the fit is not exact
  Rng rng(55);
  for (auto& row : data.rows) {
    Vec6 w = row.wrench.as_vector();
    for (int i = 0; i < 6; ++i) w[i] += rng.gaussian(0.01);
    row.wrench = Wrench::from_vector(w);
  }
  const FitReport base = estimate_stiffness(data);

  const double alpha = 3.7;
  PairedDataset scaled = data;
  for (auto& row : scaled.rows) row.wrench = Wrench::from_vector(alpha * row.wrench.as_vector());
  const FitReport s = estimate_stiffness(scaled);

  CHECK((s.k_hat.matrix() - alpha * base.k_hat.matrix()).cwiseAbs().maxCoeff() <
        1e-9 * alpha * base.k_hat.matrix().cwiseAbs().maxCoeff());
  CHECK((s.r_squared - base.r_squared).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("adding wrench noise does not raise R^2 on average") {
  const Mat6 k_true = default_stiffness().matrix();
  double clean_sum = 0.0, noisy_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PairedDataset data = exact_dataset(k_true, 120, 60 + seed);
    const FitReport clean = estimate_stiffness(data);
    Rng rng(600 + seed);
    for (auto& row : data.rows) {
      Vec6 w = row.wrench.as_vector();
      for (int i = 0; i < 6; ++i) w[i] += rng.gaussian(0.05);
      row.wrench = Wrench::from_vector(w);
    }
    const FitReport noisy = estimate_stiffness(data);
    clean_sum += clean.r_squared.mean();
    noisy_sum += noisy.r_squared.mean();
  }
  CHECK(noisy_sum / 50.0 <= clean_sum / 50.0 + 1e-12);
}

TEST_CASE("reconstruct_wrench") {
  const StiffnessMatrix k = default_stiffness();

  SUBCASE("zero signal gives zero wrench") {
    const Wrench w = reconstruct_wrench(k, DeformationSignal());
    CHECK(w.as_vector().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("algebraic identity through the compliance") {
    Rng rng(61);
    for (int i = 0; i < 100; ++i) {
      Vec6 w;
      for (int j = 0; j < 6; ++j) w[j] = rng.uniform(-3, 3);
      const DeformationSignal sig = DeformationSignal::from_vector(k.solve(w));
      CHECK((reconstruct_wrench(k, sig).as_vector() - w).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  SUBCASE("held-out reconstruction error stays within twice the noise floor") {
    WristSimulator sim = default_simulator(true);
    const FitReport fit = estimate_stiffness(
        kernels::simulate_paired_rows(sim, 4000, 7100, kernels::WrenchRanges{}, true));
    const PairedDataset held_out =
        kernels::simulate_paired_rows(sim, 2000, 7200, kernels::WrenchRanges{}, true);
    const Vec6 sig_floor = sim.signal_noise_floor();
    Vec6 wrench_floor;
    const Mat6 k_true = sim.stiffness().matrix();
    for (int i = 0; i < 6; ++i) {
      wrench_floor[i] = (k_true.row(i).transpose().array() * sig_floor.array()).matrix().norm();
    }
    Vec6 sq_err = Vec6::Zero();
    for (const auto& row : held_out.rows) {
      const Vec6 err =
          reconstruct_wrench(fit.k_hat, row.signal).as_vector() - row.wrench.as_vector();
      sq_err += err.cwiseProduct(err);
    }
    const Vec6 rms = (sq_err / static_cast<double>(held_out.rows.size())).cwiseSqrt();
    for (int i = 0; i < 6; ++i) CHECK(rms[i] <= 2.0 * wrench_floor[i]);
  }
}

TEST_CASE("sensitivity formulas") {
  SUBCASE("hand-computed translational sensitivity") {
    CameraModel cam = default_camera();
    cam.tag_width_mm = 20.0;
    cam.tag_image_width_px = 80.0;
    cam.pixel_resolution = 0.25;
    const SensitivityVector s = sensitivity(cam);
    CHECK(s[0] == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(s[2] == doctest::Approx(0.0625).epsilon(1e-12));
  }

  SUBCASE("chord-length rotational sensitivity") {
    CameraModel cam = default_camera();
    const double theta = cam.probe_angle_rad;
    const double expected =
        theta * cam.pixel_resolution / (2.0 * cam.patch_half_diagonal_px * std::sin(theta / 2.0));
    CHECK(sensitivity(cam)[4] == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("doubling image width halves translational sensitivities") {
    CameraModel cam = default_camera();
    const SensitivityVector a = sensitivity(cam);
    cam.tag_image_width_px *= 2.0;
    const SensitivityVector b = sensitivity(cam);
    for (int i : {0, 1, 2}) CHECK(b[i] == doctest::Approx(a[i] / 2.0).epsilon(1e-12));
  }

  SUBCASE("sensitivity vanishes with the pixel resolution") {
    CameraModel cam = default_camera();
    const SensitivityVector base = sensitivity(cam);
    cam.pixel_resolution = 1e-9;
    const SensitivityVector tiny = sensitivity(cam);
    for (int i = 0; i < 6; ++i) {
      CHECK(tiny[i] > 0.0);
      CHECK(tiny[i] < 1e-7 * std::max(base[i], 1.0));
    }
  }

  SUBCASE("monotonicity in d_R, w_tag, w_img") {
    CameraModel cam = default_camera();
    const SensitivityVector base = sensitivity(cam);

    CameraModel up_dr = cam;
    up_dr.pixel_resolution *= 1.5;
    const SensitivityVector s_dr = sensitivity(up_dr);

    CameraModel up_tag = cam;
    up_tag.tag_width_mm *= 1.5;
    const SensitivityVector s_tag = sensitivity(up_tag);

    CameraModel up_img = cam;
    up_img.tag_image_width_px *= 1.5;
    const SensitivityVector s_img = sensitivity(up_img);

    for (int i = 0; i < 6; ++i) {
      CHECK(s_dr[i] >= base[i] - 1e-15);
      CHECK(s_tag[i] >= base[i] - 1e-15);
      CHECK(s_img[i] <= base[i] + 1e-15);
    }
  }
}

TEST_CASE("minimum detectable wrench") {
  const SensitivityVector s = sensitivity(default_camera());

  SUBCASE("identity stiffness returns the sensitivity vector") {
    const Wrench f = min_detectable_wrench(StiffnessMatrix(), s);
    CHECK((f.as_vector() - s.values()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("scaling") {
    const Wrench f = min_detectable_wrench(StiffnessMatrix(2.0 * Mat6::Identity()), s);
    CHECK((f.as_vector() - 2.0 * s.values()).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("default stiffness ordering: Fz largest, Tz smallest") {
    const Vec6 f = min_detectable_wrench(default_stiffness(), s).as_vector();
    // full ordering of the reference design: z > y > x > tx > ty > tz
    CHECK(f[2] > f[1]);
    CHECK(f[1] > f[0]);
    CHECK(f[0] > f[3]);
    CHECK(f[3] > f[4]);
    CHECK(f[4] > f[5]);
  }
}
