// Serial reference vs OpenMP kernels on the two grid workloads.
//
//   bench_sweep [samples]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qres/diagnostics.hpp"
#include "qres/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t samples = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 128;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif

  qres::SweepConfig cfg;
  cfg.points = qres::symmetric_grid({1e-5, 0.05, 0.2, 0.6}, {0.0, 0.2});
  cfg.samples = samples;

  std::vector<qres::PointResult> serial, parallel;
  const double ts = seconds([&] { serial = qres::sweep_serial(cfg); });
  const double tp = seconds([&] { parallel = qres::sweep_parallel(cfg); });

  std::ostringstream a, b;
  qres::write_rows_csv(a, serial);
  qres::write_rows_csv(b, parallel);

  std::printf("threads=%d\n", threads);
  std::printf("sweep   points=%zu samples=%zu serial=%.3fs parallel=%.3fs speedup=%.2f identical=%s\n",
              cfg.points.size(), samples, ts, tp, ts / tp, a.str() == b.str() ? "yes" : "no");

  const auto grid = qres::default_oracle_grid();
  const double os = seconds([&] { (void)qres::oracle_check_serial(grid); });
  const double op = seconds([&] { (void)qres::oracle_check_parallel(grid); });
  std::printf("oracle  points=%zu serial=%.3fs parallel=%.3fs speedup=%.2f\n", grid.size(), os, op, os / op);
  return a.str() == b.str() ? 0 : 1;
}
