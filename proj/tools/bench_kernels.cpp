// Compares the serial reference data kernels against the OpenMP builds:
// synthetic generation (parallel over rows) and standardization (parallel
// over columns). The two paths are bit-identical; this only reports speed.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "traintime/dataset.hpp"

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double t =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (t < best) best = t;
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serial code\n");
#endif
  std::printf("%-28s %12s %12s %8s\n", "kernel", "serial (s)", "parallel (s)", "speedup");

  const struct {
    std::size_t n, v;
  } sizes[] = {{2000, 500}, {4000, 1000}, {6167, 2000}};

  for (const auto& sz : sizes) {
    traintime::SyntheticSpec spec{sz.n, sz.v, 2, 42, 2.0};
    const double ts = time_best_of(3, [&] { (void)traintime::generate_synthetic_serial(spec); });
    const double tp = time_best_of(3, [&] { (void)traintime::generate_synthetic(spec); });
    std::printf("generate %6zux%-5zu          %12.4f %12.4f %7.2fx\n", sz.n, sz.v, ts, tp, ts / tp);

    const traintime::Dataset d = traintime::generate_synthetic(spec);
    const double ss = time_best_of(3, [&] { (void)traintime::standardize_serial(d); });
    const double sp = time_best_of(3, [&] { (void)traintime::standardize(d); });
    std::printf("standardize %6zux%-5zu       %12.4f %12.4f %7.2fx\n", sz.n, sz.v, ss, sp, ss / sp);
  }
  return 0;
}
