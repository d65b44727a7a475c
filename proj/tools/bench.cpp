// Benchmark of the OpenMP kernels against their serial reference paths.

#include <chrono>
#include <cstdio>

#include "shapeforce/kernels.hpp"
#include "shapeforce/policies.hpp"
#include "shapeforce/rng.hpp"

using namespace shapeforce;

namespace {

template <typename F>
double time_s(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name, serial_s,
              parallel_s, serial_s / parallel_s);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", kernels::max_threads());
  const WristSimulator sim = default_simulator(true);

  {
    const int n = 200000;
    std::vector<kernels::SimulatedRow> a, b;
    const double ts = time_s([&] { a = kernels::simulate_rows_serial(sim, n, 42, {}); });
    const double tp = time_s([&] { b = kernels::simulate_rows_parallel(sim, n, 42, {}); });
    bool equal = a.size() == b.size();
    for (std::size_t i = 0; equal && i < a.size(); ++i) {
      equal = a[i].sample.signal.as_vector() == b[i].sample.signal.as_vector();
    }
    report("row simulation (200k)", ts, tp);
    std::printf("  serial/parallel rows identical: %s\n", equal ? "yes" : "NO");
  }

  {
    const long n = 1000000;
    Eigen::MatrixXd x(n, 6), y(n, 6);
    Rng rng(7);
    for (long i = 0; i < n; ++i)
      for (int j = 0; j < 6; ++j) {
        x(i, j) = rng.uniform(-1, 1);
        y(i, j) = rng.uniform(-1, 1);
      }
    kernels::Gram gs, gp;
    const double ts = time_s([&] { gs = kernels::gram_serial(x, y); });
    const double tp = time_s([&] { gp = kernels::gram_parallel(x, y); });
    report("gram accumulation (1M)", ts, tp);
    std::printf("  max |serial - parallel|: %.3e\n",
                (gs.xtx - gp.xtx).cwiseAbs().maxCoeff());
  }

  {
    SignalPipelineConfig cfg;
    cfg.extrinsic = sim.camera().extrinsic;
    cfg.alignment = sim.alignment();
    const ContactScene scene = default_peg_scene();
    const PolicyParams params;
    BatchSummary s, p;
    const double ts = time_s(
        [&] { s = run_task_batch(TaskKind::peg, scene, sim, cfg, params, 200, 5, false); });
    const double tp = time_s(
        [&] { p = run_task_batch(TaskKind::peg, scene, sim, cfg, params, 200, 5, true); });
    report("peg trials (200)", ts, tp);
    std::printf("  successes serial %d, parallel %d\n", s.successes, p.successes);
  }
  return 0;
}
