#include "traintime/calibration.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "traintime/fptc.hpp"
#include "traintime/stats.hpp"

namespace traintime {

CalibrationConfig desk_calibration_config() {
  CalibrationConfig cfg;
  cfg.start_features = 500;
  cfg.feature_step = 500;
  cfg.start_rows = 100;
  cfg.row_step = 1000;
  cfg.repeats = 5;
  cfg.timing_repeats_per_point = 1;
  return cfg;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 points");
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(points.size());
  mean_y /= static_cast<double>(points.size());

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: all raw values identical");

  SlopeFit fit;
  fit.points = points;
  fit.omega = sxy / sxx;
  fit.intercept = mean_y - fit.omega * mean_x;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

std::vector<std::size_t> feature_sweep(const CalibrationConfig& cfg, std::size_t v) {
  if (cfg.start_features < 1 || cfg.feature_step < 1)
    throw std::invalid_argument("calibration: feature sweep parameters must be >= 1");
  std::vector<std::size_t> out;
  for (std::size_t f = cfg.start_features; f <= v; f += cfg.feature_step) out.push_back(f);
  return out;
}

std::vector<std::size_t> row_sweep(const CalibrationConfig& cfg, std::size_t n) {
  if (cfg.start_rows < 1 || cfg.row_step < 1)
    throw std::invalid_argument("calibration: row sweep parameters must be >= 1");
  std::vector<std::size_t> out;
  for (std::size_t r = cfg.start_rows; r < n; r += cfg.row_step) out.push_back(r);
  return out;
}

SlopeTable compute_slopes(const Dataset& synthetic, const ModelSpec& spec,
                          const CalibrationConfig& cfg, const TrainFn& train_fn) {
  if (synthetic.v < cfg.start_features)
    throw std::invalid_argument("calibration: dataset has fewer features than start_features");
  if (synthetic.n <= cfg.start_rows)
    throw std::invalid_argument("calibration: dataset needs more rows than start_rows");
  if (cfg.repeats < 1 || cfg.timing_repeats_per_point < 1)
    throw std::invalid_argument("calibration: repeats must be >= 1");

  const std::vector<std::size_t> features = feature_sweep(cfg, synthetic.v);
  const std::vector<std::size_t> rows = row_sweep(cfg, synthetic.n);
  if (rows.size() < 2)
    throw std::invalid_argument("calibration: row sweep yields fewer than 2 sub-datasets");

  SlopeTable table;
  table.model_kind = spec.kind;
  table.environment = environment_fingerprint();

  for (int rep = 0; rep < cfg.repeats; ++rep) {
    for (std::size_t f : features) {
      const Dataset with_f = take_features(synthetic, f);
      std::vector<std::pair<double, double>> points;
      points.reserve(rows.size());
      for (std::size_t r : rows) {
        const Dataset sub = take_rows(with_f, r);
        const TimingStats stats =
            measure_training(sub, spec, cfg.timing_repeats_per_point, train_fn);
        const double raw = spec.kind == ModelKind::LogReg
                               ? raw_fptc_logreg(stats.mean_iterations, sub.m, sub.v, sub.n)
                               : raw_fptc_rf(spec.rf.trees, sub.m, sub.n, sub.v);
        points.emplace_back(raw, stats.mean);
      }
      table.per_repeat[f].push_back(fit_slope(points).omega);
    }
  }
  for (const auto& [f, omegas] : table.per_repeat) table.entries[f] = median_of(omegas);
  return table;
}

void save_slope_table(const SlopeTable& table, const std::string& path) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [f, omega] : table.entries) {
    entries.push_back({{"feature_count", f},
                       {"omega_median", omega},
                       {"omegas", table.per_repeat.at(f)}});
  }
  const nlohmann::json j = {{"model_kind", to_string(table.model_kind)},
                            {"environment", table.environment},
                            {"entries", entries}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("slope table: cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::pair<SlopeTable, std::string> load_slope_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("slope table: cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  SlopeTable table;
  table.model_kind = model_kind_from_string(j.at("model_kind").get<std::string>());
  table.environment = j.at("environment").get<std::string>();
  for (const auto& entry : j.at("entries")) {
    const auto f = entry.at("feature_count").get<std::size_t>();
    table.entries[f] = entry.at("omega_median").get<double>();
    table.per_repeat[f] = entry.at("omegas").get<std::vector<double>>();
  }
  std::string warning;
  if (table.environment != environment_fingerprint())
    warning = "slope table was calibrated on a different environment (\"" + table.environment +
              "\" vs \"" + environment_fingerprint() + "\"); omega should be recalibrated";
  return {table, warning};
}

}  // namespace traintime
