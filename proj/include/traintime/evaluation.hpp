#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "traintime/calibration.hpp"
#include "traintime/trainers.hpp"

namespace traintime {

struct PredictionRow {
  std::size_t feature_count = 0;  // slope key
  double omega = 0.0;
  double fptc_seconds = 0.0;
  double rmse = 0.0;
  double mape = 0.0;  // fraction, not percent
};

struct PredictionReport {
  std::string dataset_id;
  ModelKind model_kind = ModelKind::LogReg;
  double tt_mean = 0.0;
  double tt_std = 0.0;
  std::vector<PredictionRow> rows;  // sorted by feature_count
  std::string warning;              // environment mismatch etc.
};

struct AnovaResult {
  double f_statistic = 0.0;
  double p_value = 1.0;
  int df_between = 0;
  int df_within = 0;
  bool null_hypothesis_confirmed = false;  // p > 0.05
};

// Scalar form degenerates to |actual - predicted|.
double rmse(double actual, double predicted);
double rmse(const std::vector<double>& actual, const std::vector<double>& predicted);

// |actual - predicted| / |actual|, as a fraction. actual == 0 is an error.
double mape(double actual, double predicted);
double mape(const std::vector<double>& actual, const std::vector<double>& predicted);

// Measures mean training time, computes raw FPTC once from the full dataset,
// then one (fptc, rmse, mape) row per slope in the table.
PredictionReport evaluate_prediction(const Dataset& d, const ModelSpec& spec,
                                     const SlopeTable& table, int repeats,
                                     const TrainFn& train_fn = train,
                                     const std::string& dataset_id = "");

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

void save_report_json(const PredictionReport& report, const std::string& path);
void save_report_csv(const PredictionReport& report, const std::string& path);

}  // namespace traintime
