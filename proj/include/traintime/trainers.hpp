#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "traintime/dataset.hpp"

namespace traintime {

enum class ModelKind { LogReg, RandomForest };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct LogRegParams {
  int max_iterations = 10000;  // cap on Q (epochs)
  double tolerance = 1e-3;     // max |delta w| per epoch
  double l2_strength = 1.0;
};

struct RfParams {
  int trees = 100;     // s
  int max_depth = -1;  // -1 = unlimited
  int min_samples_split = 2;
};

struct ModelSpec {
  ModelKind kind = ModelKind::LogReg;
  LogRegParams logreg;
  RfParams rf;
  std::uint64_t seed = 0;
};

// One binary classifier's weights; multiclass is one-vs-rest.
struct LinearClassifier {
  std::vector<double> weights;
  double bias = 0.0;
};

struct LogRegModel {
  std::vector<LinearClassifier> classifiers;  // 1 for binary, m for OvR
  double initial_loss = 0.0;                  // regularized mean log-loss at w=0
  double final_loss = 0.0;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = -1;
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root
  std::vector<std::size_t> bootstrap;
  double bootstrap_accuracy = 0.0;  // tree's accuracy on its own bootstrap sample
};

struct ForestModel {
  std::vector<Tree> trees;
  int predict(const Dataset& d, std::size_t row) const;
};

struct TrainOutcome {
  double duration_seconds = 0.0;  // 0 here means "let the timing harness measure"
  double iterations = 0.0;        // Q, LogReg epochs
  int trees = 0;                  // s
  double train_accuracy = 0.0;
  std::shared_ptr<const LogRegModel> logreg_model;
  std::shared_ptr<const ForestModel> forest_model;
};

// Pluggable training hook; the timing and calibration modules accept one so
// tests can substitute a deterministic fake.
using TrainFn = std::function<TrainOutcome(const Dataset&, const ModelSpec&)>;

// L2-regularized logistic regression, epoch-based stochastic average
// gradient, constant step 1/(0.25 R^2 + lambda) with R^2 the max squared row
// norm. Single-threaded and deterministic given the seed.
TrainOutcome train_logreg(const Dataset& d, const ModelSpec& spec);

// Bagged CART with Gini splits over sqrt(v) candidate features per node.
TrainOutcome train_random_forest(const Dataset& d, const ModelSpec& spec);

// Dispatch on spec.kind.
TrainOutcome train(const Dataset& d, const ModelSpec& spec);

// Stable textual fingerprint of the fitted structure, for determinism checks.
std::string structure_digest(const TrainOutcome& outcome);

}  // namespace traintime
