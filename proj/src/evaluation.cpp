#include "traintime/evaluation.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "traintime/fptc.hpp"
#include "traintime/stats.hpp"
#include "traintime/timing.hpp"

namespace traintime {

double rmse(double actual, double predicted) { return std::fabs(actual - predicted); }

double rmse(const std::vector<double>& actual, const std::vector<double>& predicted) {
  if (actual.size() != predicted.size() || actual.empty())
    throw std::invalid_argument("rmse: vectors must be nonempty and of equal length");
  double ss = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = actual[i] - predicted[i];
    ss += e * e;
  }
  return std::sqrt(ss / static_cast<double>(actual.size()));
}

double mape(double actual, double predicted) {
  if (actual == 0.0)
    throw std::invalid_argument("mape: undefined for actual == 0 (small true values inflate it)");
  return std::fabs(actual - predicted) / std::fabs(actual);
}

double mape(const std::vector<double>& actual, const std::vector<double>& predicted) {
  if (actual.size() != predicted.size() || actual.empty())
    throw std::invalid_argument("mape: vectors must be nonempty and of equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) sum += mape(actual[i], predicted[i]);
  return sum / static_cast<double>(actual.size());
}

PredictionReport evaluate_prediction(const Dataset& d, const ModelSpec& spec,
                                     const SlopeTable& table, int repeats,
                                     const TrainFn& train_fn, const std::string& dataset_id) {
  if (table.model_kind != spec.kind)
    throw std::invalid_argument("evaluate: slope table is for " + to_string(table.model_kind) +
                                " but the model spec is " + to_string(spec.kind));
  if (repeats < 1) throw std::invalid_argument("evaluate: repeats >= 1");
  if (table.entries.empty()) throw std::invalid_argument("evaluate: slope table is empty");

  PredictionReport report;
  report.dataset_id = dataset_id;
  report.model_kind = spec.kind;
  if (table.environment != environment_fingerprint())
    report.warning = "slope table environment (\"" + table.environment +
                     "\") differs from this machine (\"" + environment_fingerprint() + "\")";

  const TimingStats stats = measure_training(d, spec, repeats, train_fn);
  report.tt_mean = stats.mean;
  report.tt_std = stats.std;

  const double raw = spec.kind == ModelKind::LogReg
                         ? raw_fptc_logreg(stats.mean_iterations, d.m, d.v, d.n)
                         : raw_fptc_rf(spec.rf.trees, d.m, d.n, d.v);

  for (const auto& [feature_count, omega] : table.entries) {
    PredictionRow row;
    row.feature_count = feature_count;
    row.omega = omega;
    row.fptc_seconds = predict_time(raw, Slope{omega, feature_count, table.environment});
    row.rmse = rmse(report.tt_mean, row.fptc_seconds);
    row.mape = mape(report.tt_mean, row.fptc_seconds);
    report.rows.push_back(row);
  }
  return report;
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("anova: need >= 2 groups");
  std::size_t total_n = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw std::invalid_argument("anova: every group needs >= 2 observations");
    total_n += g.size();
    for (double x : g) grand_sum += x;
  }
  const double grand_mean = grand_sum / static_cast<double>(total_n);

  double ss_between = 0.0, ss_within = 0.0;
  for (const auto& g : groups) {
    double mean = 0.0;
    for (double x : g) mean += x;
    mean /= static_cast<double>(g.size());
    ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double x : g) ss_within += (x - mean) * (x - mean);
  }

  AnovaResult res;
  res.df_between = static_cast<int>(groups.size()) - 1;
  res.df_within = static_cast<int>(total_n - groups.size());
  if (ss_within <= 0.0)
    throw std::invalid_argument("anova: zero within-group variance; F is undefined");
  res.f_statistic = (ss_between / res.df_between) / (ss_within / res.df_within);
  res.p_value = f_survival(res.f_statistic, res.df_between, res.df_within);
  res.null_hypothesis_confirmed = res.p_value > 0.05;
  return res;
}

void save_report_json(const PredictionReport& report, const std::string& path) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"feature_count", r.feature_count},
                    {"omega", r.omega},
                    {"fptc_seconds", r.fptc_seconds},
                    {"rmse", r.rmse},
                    {"mape", r.mape}});
  const nlohmann::json j = {{"dataset_id", report.dataset_id},
                            {"model_kind", to_string(report.model_kind)},
                            {"tt_mean", report.tt_mean},
                            {"tt_std", report.tt_std},
                            {"warning", report.warning},
                            {"rows", rows}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void save_report_csv(const PredictionReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot write '" + path + "'");
  out.precision(17);
  out << "feature_count,omega,fptc_seconds,rmse,mape,mape_percent\n";
  for (const auto& r : report.rows)
    out << r.feature_count << ',' << r.omega << ',' << r.fptc_seconds << ',' << r.rmse << ','
        << r.mape << ',' << 100.0 * r.mape << '\n';
}

}  // namespace traintime
