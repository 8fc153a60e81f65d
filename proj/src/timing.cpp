#include "traintime/timing.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <sys/utsname.h>

#include "traintime/stats.hpp"

namespace traintime {

namespace {

constexpr const char* kToolkitVersion = "traintime 0.1.0";

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::size_t start = colon + 1;
        while (start < line.size() && line[start] == ' ') ++start;
        return line.substr(start);
      }
    }
  }
  return "unknown-cpu";
}

std::mutex& measurement_mutex() {
  static std::mutex m;
  return m;
}

double spin_once() {
  const auto start = std::chrono::steady_clock::now();
  volatile double acc = 0.0;
  for (int i = 0; i < 2'000'000; ++i) acc = acc + 1e-9 * i;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double& spin_baseline() {
  static double baseline = spin_once();
  return baseline;
}

}  // namespace

std::string environment_fingerprint() {
  static const std::string fp = [] {
    utsname uts{};
    uname(&uts);
    std::ostringstream os;
    os << uts.sysname << ' ' << uts.release << " | " << cpu_model() << " | "
       << std::thread::hardware_concurrency() << " cores | " << kToolkitVersion;
    return os.str();
  }();
  return fp;
}

TimingStats measure_training(const Dataset& d, const ModelSpec& spec, int repeats,
                             const TrainFn& train_fn, const MeasureOptions& options) {
  if (repeats < 1) throw std::invalid_argument("measure_training: repeats >= 1");

  std::lock_guard<std::mutex> lock(measurement_mutex());

  if (options.preflight_load_check) {
    const double now = spin_once();
    if (now > 2.0 * spin_baseline())
      throw std::runtime_error("measure_training: preflight spin took " + std::to_string(now) +
                               "s vs baseline " + std::to_string(spin_baseline()) +
                               "s; machine appears loaded");
  }

  train_fn(d, spec);  // warm-up, discarded

  TimingStats stats;
  stats.environment = environment_fingerprint();
  stats.samples.reserve(static_cast<std::size_t>(repeats));
  double iteration_sum = 0.0;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    const TrainOutcome outcome = train_fn(d, spec);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double sample = outcome.duration_seconds > 0.0 ? outcome.duration_seconds : elapsed;
    if (sample <= 0.0)
      throw std::runtime_error("measure_training: zero elapsed time; below clock resolution");
    stats.samples.push_back(sample);
    iteration_sum += outcome.iterations;
  }
  const Summary s = summarize(stats.samples);
  stats.mean = s.mean;
  stats.std = s.std;
  stats.median = s.median;
  stats.mean_iterations = iteration_sum / repeats;
  return stats;
}

}  // namespace traintime
