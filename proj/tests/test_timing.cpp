#include <doctest.h>

#include <cmath>

#include "traintime/timing.hpp"

using namespace traintime;

namespace {

// Fake trainer reporting a scripted duration per call; counts invocations so
// the warm-up contract is observable.
struct ScriptedTrainer {
  std::vector<double> durations;
  mutable std::size_t calls = 0;

  TrainOutcome operator()(const Dataset&, const ModelSpec&) const {
    TrainOutcome out;
    out.duration_seconds = durations[calls % durations.size()];
    out.iterations = 10.0 + static_cast<double>(calls);
    ++calls;
    return out;
  }
};

Dataset tiny_dataset() { return generate_synthetic({10, 2, 2, 1, 1.0}); }

}  // namespace

TEST_CASE("single repeat: mean == median == the one sample, std 0") {
  ScriptedTrainer fake{{0.5}};
  const TimingStats stats = measure_training(tiny_dataset(), ModelSpec{}, 1, std::cref(fake));
  CHECK(stats.samples.size() == 1);
  CHECK(stats.mean == 0.5);
  CHECK(stats.median == 0.5);
  CHECK(stats.std == 0.0);
}

TEST_CASE("warm-up run is excluded from samples") {
  ScriptedTrainer fake{{9.0, 1.0, 2.0, 3.0}};  // first call is warm-up
  const TimingStats stats = measure_training(tiny_dataset(), ModelSpec{}, 3, std::cref(fake));
  CHECK(fake.calls == 4);
  CHECK(stats.samples == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(stats.mean == doctest::Approx(2.0));
  CHECK(stats.median == 2.0);
}

TEST_CASE("statistics are consistent with the samples") {
  ScriptedTrainer fake{{0.1, 0.2, 0.3, 0.4, 0.5}};
  const TimingStats stats = measure_training(tiny_dataset(), ModelSpec{}, 4, std::cref(fake));
  double mean = 0.0;
  for (double s : stats.samples) mean += s;
  mean /= stats.samples.size();
  CHECK(std::fabs(stats.mean - mean) < 1e-12);
  // mean_iterations averages the timed runs only
  CHECK(stats.mean_iterations == doctest::Approx((11.0 + 12.0 + 13.0 + 14.0) / 4.0));
}

TEST_CASE("real trainer produces positive wall-clock samples") {
  ModelSpec spec;
  spec.logreg.max_iterations = 5;
  spec.logreg.tolerance = 0.0;
  const Dataset d = generate_synthetic({200, 20, 2, 3, 2.0});
  const TimingStats stats = measure_training(d, spec, 2);
  CHECK(stats.samples.size() == 2);
  for (double s : stats.samples) CHECK(s > 0.0);
  CHECK(stats.mean_iterations == 5.0);
  CHECK(!stats.environment.empty());
}

TEST_CASE("repeats must be positive") {
  CHECK_THROWS_AS(measure_training(tiny_dataset(), ModelSpec{}, 0), std::invalid_argument);
}

TEST_CASE("environment fingerprint is stable and descriptive") {
  const std::string fp = environment_fingerprint();
  CHECK(fp == environment_fingerprint());
  CHECK(fp.find("traintime") != std::string::npos);
  CHECK(fp.find("cores") != std::string::npos);
}

TEST_CASE("preflight load check runs without tripping on an idle process") {
  ScriptedTrainer fake{{0.25}};
  MeasureOptions options;
  options.preflight_load_check = true;
  const TimingStats stats =
      measure_training(tiny_dataset(), ModelSpec{}, 1, std::cref(fake), options);
  CHECK(stats.samples.size() == 1);
}
