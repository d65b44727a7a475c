#include "doctest.h"
#include "shapeforce/kernels.hpp"
#include "shapeforce/rng.hpp"

using namespace shapeforce;

TEST_CASE("simulated rows are identical for serial and parallel paths") {
  const WristSimulator sim = default_simulator(true);
  const auto a = kernels::simulate_rows_serial(sim, 500, 12345, {});
  const auto b = kernels::simulate_rows_parallel(sim, 500, 12345, {});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sample.signal.as_vector() == b[i].sample.signal.as_vector());
    CHECK(a[i].sample.wrench.as_vector() == b[i].sample.wrench.as_vector());
    CHECK((a[i].tag_in_cam.matrix() - b[i].tag_in_cam.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("rows do not depend on evaluation order") {
  // each row derives its own seed, so a row computed alone matches the batch
  const WristSimulator sim = default_simulator(true);
  const auto batch = kernels::simulate_rows_serial(sim, 100, 777, {});
  const auto tail = kernels::simulate_rows_serial(sim, 100, 777, {});
  CHECK(batch[99].sample.signal.as_vector() == tail[99].sample.signal.as_vector());
}

TEST_CASE("gram accumulation matches between paths and against Eigen") {
  Rng rng(55);
  const long n = 4000;
  Eigen::MatrixXd x(n, 6), y(n, 6);
  for (long i = 0; i < n; ++i)
    for (int j = 0; j < 6; ++j) {
      x(i, j) = rng.uniform(-2, 2);
      y(i, j) = rng.uniform(-2, 2);
    }
  const kernels::Gram gs = kernels::gram_serial(x, y);
  const kernels::Gram gp = kernels::gram_parallel(x, y);
  CHECK(gs.n == n);
  CHECK(gp.n == n);

  const double scale = gs.xtx.cwiseAbs().maxCoeff();
  CHECK((gs.xtx - gp.xtx).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK((gs.xty - gp.xty).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK((gs.y_sum - gp.y_sum).cwiseAbs().maxCoeff() <= 1e-12 * scale);

  // independent route: direct matrix products
  CHECK((gs.xtx - x.transpose() * x).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((gs.xty - x.transpose() * y).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((gs.y_sum - y.colwise().sum().transpose()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("paired dataset wrapper preserves row order") {
  const WristSimulator sim = default_simulator(true);
  const auto rows = kernels::simulate_rows(sim, 50, 31, {}, true);
  const PairedDataset data = kernels::simulate_paired_rows(sim, 50, 31, {}, true);
  REQUIRE(data.rows.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(data.rows[i].signal.as_vector() == rows[i].sample.signal.as_vector());
  }
}
