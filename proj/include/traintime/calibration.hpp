#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "traintime/timing.hpp"
#include "traintime/trainers.hpp"

namespace traintime {

struct CalibrationConfig {
  std::size_t start_features = 501;  // f
  std::size_t feature_step = 501;    // a
  std::size_t start_rows = 100;
  std::size_t row_step = 1000;  // p
  int repeats = 20;
  int timing_repeats_per_point = 1;
};

// Reduced sweep for quick runs; pair with a (n=3000, v=2000) synthetic set.
CalibrationConfig desk_calibration_config();

struct SlopeFit {
  double omega = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (raw fptc, seconds)
};

// Ordinary least squares: seconds = omega * raw + intercept.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

struct SlopeTable {
  ModelKind model_kind = ModelKind::LogReg;
  std::string environment;
  std::map<std::size_t, double> entries;                     // feature count -> median omega
  std::map<std::size_t, std::vector<double>> per_repeat;     // feature count -> omegas
};

// The sweep grids: {f, f+a, ...} up to and including v, and
// {start, start+p, ...} strictly below n.
std::vector<std::size_t> feature_sweep(const CalibrationConfig& cfg, std::size_t v);
std::vector<std::size_t> row_sweep(const CalibrationConfig& cfg, std::size_t n);

// Per repeat and feature count: time the trainer on each row-prefix
// sub-dataset, regress seconds on raw FPTC, keep the slope; entries are
// medians over repeats. Timed runs are sequential by the timing contract.
SlopeTable compute_slopes(const Dataset& synthetic, const ModelSpec& spec,
                          const CalibrationConfig& cfg, const TrainFn& train_fn = train);

void save_slope_table(const SlopeTable& table, const std::string& path);

// Returns the table plus a warning string (empty when the stored environment
// matches this machine).
std::pair<SlopeTable, std::string> load_slope_table(const std::string& path);

}  // namespace traintime
