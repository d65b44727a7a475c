#include "shapeforce/kernels.hpp"

#include <vector>

#include "shapeforce/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shapeforce::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

void accumulate_row(Gram& g, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, long i) {
  const Vec6 xi = x.row(i).transpose();
  const Vec6 yi = y.row(i).transpose();
  g.xtx.noalias() += xi * xi.transpose();
  g.xty.noalias() += xi * yi.transpose();
  g.y_sum += yi;
  g.y_sq_sum += yi.cwiseProduct(yi);
  ++g.n;
}

void merge(Gram& into, const Gram& part) {
  into.xtx += part.xtx;
  into.xty += part.xty;
  into.y_sum += part.y_sum;
  into.y_sq_sum += part.y_sq_sum;
  into.n += part.n;
}

SimulatedRow simulate_row(const WristSimulator& sim, std::uint64_t seed,
                          const WrenchRanges& ranges) {
  Rng rng(seed);
  Vec6 w;
  for (int j = 0; j < 3; ++j) w[j] = rng.uniform(-ranges.force_n, ranges.force_n);
  for (int j = 3; j < 6; ++j) w[j] = rng.uniform(-ranges.torque_nm, ranges.torque_nm);
  const Wrench wrench = Wrench::from_vector(w);
  const Pose tag = sim.observe(wrench, rng);
  return SimulatedRow{PairedSample{sim.signal_from_tag(tag), wrench}, tag};
}

}  // namespace

Gram gram_serial(const Eigen::MatrixXd& signals, const Eigen::MatrixXd& wrenches) {
  Gram g;
  for (long i = 0; i < signals.rows(); ++i) accumulate_row(g, signals, wrenches, i);
  return g;
}

Gram gram_parallel(const Eigen::MatrixXd& signals, const Eigen::MatrixXd& wrenches) {
  const long n = signals.rows();
  const int nthreads = max_threads();
  std::vector<Gram> partials(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    Gram& part = partials[static_cast<std::size_t>(tid)];
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) accumulate_row(part, signals, wrenches, i);
  }
  Gram g;
  for (const Gram& part : partials) merge(g, part);
  return g;
}

Gram gram(const Eigen::MatrixXd& signals, const Eigen::MatrixXd& wrenches, bool parallel) {
  return parallel ? gram_parallel(signals, wrenches) : gram_serial(signals, wrenches);
}

std::vector<SimulatedRow> simulate_rows_serial(const WristSimulator& sim, int n,
                                               std::uint64_t root_seed,
                                               const WrenchRanges& ranges) {
  std::vector<SimulatedRow> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] =
        simulate_row(sim, derive_seed(root_seed, static_cast<std::uint64_t>(i)), ranges);
  }
  return rows;
}

std::vector<SimulatedRow> simulate_rows_parallel(const WristSimulator& sim, int n,
                                                 std::uint64_t root_seed,
                                                 const WrenchRanges& ranges) {
  std::vector<SimulatedRow> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] =
        simulate_row(sim, derive_seed(root_seed, static_cast<std::uint64_t>(i)), ranges);
  }
  return rows;
}

std::vector<SimulatedRow> simulate_rows(const WristSimulator& sim, int n,
                                        std::uint64_t root_seed, const WrenchRanges& ranges,
                                        bool parallel) {
  return parallel ? simulate_rows_parallel(sim, n, root_seed, ranges)
                  : simulate_rows_serial(sim, n, root_seed, ranges);
}

PairedDataset simulate_paired_rows(const WristSimulator& sim, int n, std::uint64_t root_seed,
                                   const WrenchRanges& ranges, bool parallel) {
  PairedDataset data;
  data.rows.reserve(static_cast<std::size_t>(n));
  for (SimulatedRow& row : simulate_rows(sim, n, root_seed, ranges, parallel)) {
    data.rows.push_back(std::move(row.sample));
  }
  return data;
}

}  // namespace shapeforce::kernels
