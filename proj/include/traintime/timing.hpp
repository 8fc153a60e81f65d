#pragma once

#include <string>
#include <vector>

#include "traintime/trainers.hpp"

namespace traintime {

struct TimingStats {
  std::vector<double> samples;  // wall-clock seconds, warm-up excluded
  double mean = 0.0;
  double std = 0.0;
  double median = 0.0;
  double mean_iterations = 0.0;  // LogReg epochs, averaged over repeats
  std::string environment;
};

struct MeasureOptions {
  // When set, a spin-calibration runs before measuring and aborts if it takes
  // more than 2x the process baseline (machine under load).
  bool preflight_load_check = false;
};

// OS / CPU / core count / toolkit version, for cross-machine reuse checks.
std::string environment_fingerprint();

// One untimed warm-up run, then `repeats` timed runs around the train call
// only. Timed runs are exclusive process-wide. If the trainer reports its own
// positive duration (test fakes do), that value is used instead of the clock.
TimingStats measure_training(const Dataset& d, const ModelSpec& spec, int repeats,
                             const TrainFn& train_fn = train,
                             const MeasureOptions& options = {});

}  // namespace traintime
