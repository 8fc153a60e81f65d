// traintime: synthetic data generation, slope calibration, training-time
// prediction, and ANOVA over slope tables.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "traintime/calibration.hpp"
#include "traintime/dataset.hpp"
#include "traintime/evaluation.hpp"
#include "traintime/timing.hpp"
#include "traintime/trainers.hpp"

namespace {

using namespace traintime;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TRAINTIME_SEED")) return std::strtoull(env, nullptr, 10);
  return 42;
}

std::vector<std::size_t> parse_exclude(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ','))
    if (!cell.empty()) out.push_back(std::stoull(cell));
  return out;
}

// Optional JSON config file; keys mirror the long flag names. Flags given on
// the command line override file values, so the file only fills defaults.
void apply_config_defaults(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("invalid JSON: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() > 0) continue;
    opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
    opt->run_callback();
  }
}

struct TrainerFlags {
  std::string model = "logreg";
  int max_iterations = 10000;
  double tolerance = 1e-3;
  double l2_strength = 1.0;
  int trees = 100;
  int max_depth = -1;
  int min_samples_split = 2;
  std::uint64_t seed = default_seed();

  void attach(CLI::App& cmd) {
    cmd.add_option("--model", model, "Classifier: logreg or rf")->required();
    cmd.add_option("--max-iter", max_iterations, "LogReg epoch cap (Q upper bound)");
    cmd.add_option("--tol", tolerance, "LogReg convergence tolerance on max |dw| per epoch");
    cmd.add_option("--l2", l2_strength, "LogReg l2 regularization strength");
    cmd.add_option("--trees", trees, "Random forest tree count (s)");
    cmd.add_option("--max-depth", max_depth, "Random forest depth cap (-1 = unlimited)");
    cmd.add_option("--min-split", min_samples_split, "Random forest min samples to split");
    cmd.add_option("--seed", seed, "RNG seed (falls back to TRAINTIME_SEED)");
  }

  ModelSpec to_spec() const {
    ModelSpec spec;
    spec.kind = model_kind_from_string(model);
    spec.logreg = {max_iterations, tolerance, l2_strength};
    spec.rf = {trees, max_depth, min_samples_split};
    spec.seed = seed;
    return spec;
  }
};

int run_synth(std::size_t rows, std::size_t features, int classes, std::uint64_t seed,
              double separation, const std::string& out) {
  try {
    SyntheticSpec spec{rows, features, classes, seed, separation};
    const Dataset d = generate_synthetic(spec);
    save_csv(d, out);
    std::printf("wrote %s: n=%zu v=%zu m=%d\n", out.c_str(), d.n, d.v, d.m);
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}

int run_calibrate(const std::string& data, const std::string& label, const TrainerFlags& trainer,
                  const CalibrationConfig& cfg, bool do_standardize, const std::string& out) {
  Dataset d;
  ModelSpec spec;
  try {
    spec = trainer.to_spec();
    d = load_csv(data, label);
    if (do_standardize) d = standardize(d);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    const SlopeTable table = compute_slopes(d, spec, cfg);
    save_slope_table(table, out);
    for (const auto& [f, omega] : table.entries)
      std::printf("features=%zu  omega_median=%.6e\n", f, omega);
    std::printf("wrote %s (%zu entries)\n", out.c_str(), table.entries.size());
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}

int run_evaluate(const std::string& data, const std::string& label, const TrainerFlags& trainer,
                 const std::string& slopes, int repeats, bool do_standardize,
                 const std::string& out, const std::string& csv) {
  ModelSpec spec;
  Dataset d;
  SlopeTable table;
  std::string load_warning;
  try {
    spec = trainer.to_spec();
    d = load_csv(data, label);
    if (do_standardize) d = standardize(d);
    std::tie(table, load_warning) = load_slope_table(slopes);
    if (table.model_kind != spec.kind)
      throw std::invalid_argument("slope table model kind (" + to_string(table.model_kind) +
                                  ") does not match --model " + to_string(spec.kind));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    if (!load_warning.empty()) std::fprintf(stderr, "warning: %s\n", load_warning.c_str());
    PredictionReport report = evaluate_prediction(d, spec, table, repeats, train, data);
    save_report_json(report, out);
    if (!csv.empty()) save_report_csv(report, csv);
    const auto best = std::min_element(
        report.rows.begin(), report.rows.end(),
        [](const PredictionRow& a, const PredictionRow& b) { return a.mape < b.mape; });
    std::printf("tt_mean=%.6f s  tt_std=%.6f s\n", report.tt_mean, report.tt_std);
    std::printf("best slope: features=%zu omega=%.6e fptc=%.6f s rmse=%.6f mape=%.4f (%.2f%%)\n",
                best->feature_count, best->omega, best->fptc_seconds, best->rmse, best->mape,
                100.0 * best->mape);
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}

int run_anova(const std::string& slopes, const std::string& exclude) {
  SlopeTable table;
  std::vector<std::size_t> excluded;
  try {
    table = load_slope_table(slopes).first;
    excluded = parse_exclude(exclude);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    std::vector<std::vector<double>> groups;
    for (const auto& [f, omegas] : table.per_repeat) {
      if (std::find(excluded.begin(), excluded.end(), f) != excluded.end()) continue;
      groups.push_back(omegas);
    }
    const AnovaResult res = one_way_anova(groups);
    std::printf("groups=%zu F=%.6f df=(%d,%d) p=%.6g\n", groups.size(), res.f_statistic,
                res.df_between, res.df_within, res.p_value);
    std::printf("p %s 0.05: null hypothesis (equal slope means) %s\n",
                res.p_value > 0.05 ? ">" : "<=",
                res.null_hypothesis_confirmed ? "confirmed" : "rejected");
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FPTC training-time prediction toolkit"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic Gaussian-blob dataset as CSV");
  std::size_t rows = 0, features = 0;
  int classes = 2;
  std::uint64_t synth_seed = default_seed();
  double separation = 2.0;
  std::string synth_out;
  synth->add_option("--rows", rows, "Row count n")->required();
  synth->add_option("--features", features, "Feature count v")->required();
  synth->add_option("--classes", classes, "Class count m");
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("--separation", separation, "Distance between per-class means");
  synth->add_option("--out", synth_out, "Output CSV path")->required();

  // shared trainer flags per subcommand
  auto* calibrate = app.add_subcommand("calibrate", "Sweep subsets and fit omega slopes");
  TrainerFlags cal_trainer;
  cal_trainer.attach(*calibrate);
  std::string cal_data, cal_label = "label", cal_out, cal_preset, cal_config;
  CalibrationConfig cal_cfg;
  bool cal_standardize = false;
  calibrate->add_option("--data", cal_data, "Dataset CSV")->required();
  calibrate->add_option("--label", cal_label, "Label column name");
  calibrate->add_option("--start-features", cal_cfg.start_features, "First feature-subset width (f)");
  calibrate->add_option("--feature-step", cal_cfg.feature_step, "Features added per sweep step (a)");
  calibrate->add_option("--start-rows", cal_cfg.start_rows, "First row-subset size");
  calibrate->add_option("--row-step", cal_cfg.row_step, "Rows added per sweep step (p)");
  calibrate->add_option("--repeats", cal_cfg.repeats, "Sweep repetitions (median taken)");
  calibrate->add_option("--timing-repeats", cal_cfg.timing_repeats_per_point,
                        "Timed runs per sub-dataset");
  calibrate->add_flag("--standardize", cal_standardize, "Z-score features before training");
  calibrate->add_option("--preset", cal_preset, "paper | desk parameter preset")
      ->check(CLI::IsMember({"paper", "desk"}));
  calibrate->add_option("--config", cal_config, "JSON config file (flags override)");
  calibrate->add_option("--out", cal_out, "Slope table JSON output")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Predict training time and report RMSE/MAPE");
  TrainerFlags eval_trainer;
  eval_trainer.attach(*evaluate);
  std::string eval_data, eval_label = "label", eval_slopes, eval_out, eval_csv, eval_config;
  int eval_repeats = 100;
  bool eval_standardize = false;
  evaluate->add_option("--data", eval_data, "Dataset CSV")->required();
  evaluate->add_option("--label", eval_label, "Label column name");
  evaluate->add_option("--slopes", eval_slopes, "Slope table JSON from calibrate")->required();
  evaluate->add_option("--repeats", eval_repeats, "Timed training repetitions");
  evaluate->add_flag("--standardize", eval_standardize, "Z-score features before training");
  evaluate->add_option("--config", eval_config, "JSON config file (flags override)");
  evaluate->add_option("--out", eval_out, "Report JSON output")->required();
  evaluate->add_option("--csv", eval_csv, "Optional flat CSV report (one row per slope)");

  auto* anova = app.add_subcommand("anova", "One-way ANOVA over per-feature-count slope groups");
  std::string anova_slopes, anova_exclude;
  anova->add_option("--slopes", anova_slopes, "Slope table JSON with per-repeat omegas")->required();
  anova->add_option("--exclude", anova_exclude, "Comma-separated feature counts to drop");

  calibrate->callback([&] {
    if (cal_preset == "paper") {
      if (calibrate->count("--start-features") == 0) cal_cfg.start_features = 501;
      if (calibrate->count("--feature-step") == 0) cal_cfg.feature_step = 501;
      if (calibrate->count("--start-rows") == 0) cal_cfg.start_rows = 100;
      if (calibrate->count("--row-step") == 0) cal_cfg.row_step = 1000;
      if (calibrate->count("--repeats") == 0) cal_cfg.repeats = 20;
    } else if (cal_preset == "desk") {
      const CalibrationConfig desk = desk_calibration_config();
      if (calibrate->count("--start-features") == 0) cal_cfg.start_features = desk.start_features;
      if (calibrate->count("--feature-step") == 0) cal_cfg.feature_step = desk.feature_step;
      if (calibrate->count("--start-rows") == 0) cal_cfg.start_rows = desk.start_rows;
      if (calibrate->count("--row-step") == 0) cal_cfg.row_step = desk.row_step;
      if (calibrate->count("--repeats") == 0) cal_cfg.repeats = desk.repeats;
      if (calibrate->count("--max-iter") == 0) cal_trainer.max_iterations = 25;
      if (calibrate->count("--tol") == 0) cal_trainer.tolerance = 0.0;
      if (calibrate->count("--trees") == 0) cal_trainer.trees = 10;
      if (calibrate->count("--max-depth") == 0) cal_trainer.max_depth = 12;
    }
  });

  try {
    app.parse(argc, argv);
    if (*calibrate && !cal_config.empty()) apply_config_defaults(*calibrate, cal_config);
    if (*evaluate && !eval_config.empty()) apply_config_defaults(*evaluate, eval_config);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*synth) return run_synth(rows, features, classes, synth_seed, separation, synth_out);
  if (*calibrate)
    return run_calibrate(cal_data, cal_label, cal_trainer, cal_cfg, cal_standardize, cal_out);
  if (*evaluate)
    return run_evaluate(eval_data, eval_label, eval_trainer, eval_slopes, eval_repeats,
                        eval_standardize, eval_out, eval_csv);
  if (*anova) return run_anova(anova_slopes, anova_exclude);
  return kExitConfig;
}
