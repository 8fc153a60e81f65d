#include "traintime/trainers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace traintime {

std::string to_string(ModelKind kind) {
  return kind == ModelKind::LogReg ? "logreg" : "rf";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "logreg") return ModelKind::LogReg;
  if (name == "rf" || name == "random_forest") return ModelKind::RandomForest;
  throw std::invalid_argument("unknown model kind '" + name + "' (expected logreg or rf)");
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double regularized_log_loss(const Dataset& d, const std::vector<char>& positive,
                            const LinearClassifier& clf, double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < d.n; ++i) {
    double margin = clf.bias;
    const double* x = d.features.data() + i * d.v;
    for (std::size_t j = 0; j < d.v; ++j) margin += clf.weights[j] * x[j];
    const double ysign = positive[i] ? 1.0 : -1.0;
    const double z = -ysign * margin;
    loss += z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  }
  loss /= static_cast<double>(d.n);
  double w2 = 0.0;
  for (double w : clf.weights) w2 += w * w;
  return loss + 0.5 * lambda * w2;
}

// SAG epochs for one binary problem. Returns epochs performed.
int sag_fit(const Dataset& d, const std::vector<char>& positive, const LogRegParams& params,
            std::uint64_t seed, LinearClassifier& clf) {
  const std::size_t n = d.n;
  const std::size_t v = d.v;
  clf.weights.assign(v, 0.0);
  clf.bias = 0.0;

  double max_row_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* x = d.features.data() + i * v;
    double s = 1.0;  // bias term
    for (std::size_t j = 0; j < v; ++j) s += x[j] * x[j];
    max_row_sq = std::max(max_row_sq, s);
  }
  const double lambda = params.l2_strength / static_cast<double>(n);
  const double step = 1.0 / (0.25 * max_row_sq + lambda);

  std::vector<double> stored(n, 0.0);  // per-sample loss derivative d/dmargin
  std::vector<double> grad_sum(v, 0.0);
  double grad_sum_bias = 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> prev(v + 1, 0.0);
  std::mt19937_64 rng(seed);

  int epoch = 0;
  for (; epoch < params.max_iterations; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    std::copy(clf.weights.begin(), clf.weights.end(), prev.begin());
    prev[v] = clf.bias;

    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = order[k];
      const double* x = d.features.data() + i * v;
      double margin = clf.bias;
      for (std::size_t j = 0; j < v; ++j) margin += clf.weights[j] * x[j];
      if (!std::isfinite(margin))
        throw std::runtime_error("logreg: diverged (non-finite margin) at epoch " +
                                 std::to_string(epoch + 1));
      const double target = positive[i] ? 1.0 : 0.0;
      const double deriv = sigmoid(margin) - target;
      const double delta = deriv - stored[i];
      stored[i] = deriv;
      grad_sum_bias += delta;
      const double inv_n = 1.0 / static_cast<double>(n);
      for (std::size_t j = 0; j < v; ++j) {
        grad_sum[j] += delta * x[j];
        clf.weights[j] -= step * (grad_sum[j] * inv_n + lambda * clf.weights[j]);
      }
      clf.bias -= step * grad_sum_bias * inv_n;
    }

    double max_change = std::fabs(clf.bias - prev[v]);
    for (std::size_t j = 0; j < v; ++j)
      max_change = std::max(max_change, std::fabs(clf.weights[j] - prev[j]));
    if (max_change < params.tolerance) {
      ++epoch;
      break;
    }
  }
  return std::max(epoch, 1);
}

void warn_if_not_standardized(const Dataset& d) {
  const std::size_t probe = std::min<std::size_t>(d.v, 5);
  for (std::size_t j = 0; j < probe; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d.n; ++i) sum += d.at(i, j);
    if (std::fabs(sum / static_cast<double>(d.n)) > 0.5) {
      std::fprintf(stderr,
                   "warning: logreg input does not look standardized (column %zu mean %.3f)\n", j,
                   sum / static_cast<double>(d.n));
      return;
    }
  }
}

}  // namespace

TrainOutcome train_logreg(const Dataset& d, const ModelSpec& spec) {
  d.validate();
  if (spec.logreg.max_iterations < 1) throw std::invalid_argument("logreg: max_iterations >= 1");
  if (spec.logreg.tolerance < 0.0) throw std::invalid_argument("logreg: tolerance >= 0");
  warn_if_not_standardized(d);

  auto model = std::make_shared<LogRegModel>();
  const int problems = d.m == 2 ? 1 : d.m;  // binary natively, OvR otherwise
  double epoch_sum = 0.0;
  std::vector<char> positive(d.n);
  for (int c = 0; c < problems; ++c) {
    const int target_class = d.m == 2 ? 1 : c;
    for (std::size_t i = 0; i < d.n; ++i) positive[i] = d.labels[i] == target_class;
    LinearClassifier clf;
    clf.weights.assign(d.v, 0.0);
    model->initial_loss += regularized_log_loss(d, positive, clf, spec.logreg.l2_strength / d.n);
    epoch_sum += sag_fit(d, positive, spec.logreg, spec.seed + static_cast<std::uint64_t>(c), clf);
    model->final_loss += regularized_log_loss(d, positive, clf, spec.logreg.l2_strength / d.n);
    model->classifiers.push_back(std::move(clf));
  }
  model->initial_loss /= problems;
  model->final_loss /= problems;

  std::size_t correct = 0;
  for (std::size_t i = 0; i < d.n; ++i) {
    int pred;
    if (d.m == 2) {
      const auto& clf = model->classifiers[0];
      double margin = clf.bias;
      const double* x = d.features.data() + i * d.v;
      for (std::size_t j = 0; j < d.v; ++j) margin += clf.weights[j] * x[j];
      pred = margin > 0.0 ? 1 : 0;
    } else {
      double best = -1e300;
      pred = 0;
      for (int c = 0; c < d.m; ++c) {
        const auto& clf = model->classifiers[static_cast<std::size_t>(c)];
        double margin = clf.bias;
        const double* x = d.features.data() + i * d.v;
        for (std::size_t j = 0; j < d.v; ++j) margin += clf.weights[j] * x[j];
        if (margin > best) {
          best = margin;
          pred = c;
        }
      }
    }
    if (pred == d.labels[i]) ++correct;
  }

  TrainOutcome out;
  out.iterations = epoch_sum / problems;
  out.train_accuracy = static_cast<double>(correct) / static_cast<double>(d.n);
  out.logreg_model = model;
  return out;
}

namespace {

int majority_label(const std::vector<int>& counts) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(counts.size()); ++c)
    if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) best = c;
  return best;
}

double weighted_gini(const std::vector<int>& counts, int total) {
  if (total == 0) return 0.0;
  double sum_sq = 0.0;
  for (int c : counts) sum_sq += static_cast<double>(c) * c;
  return static_cast<double>(total) - sum_sq / static_cast<double>(total);
}

struct SplitResult {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
  bool found = false;
};

SplitResult best_split(const Dataset& d, const std::vector<std::size_t>& samples,
                       const std::vector<int>& node_counts, std::mt19937_64& rng,
                       std::vector<std::pair<double, int>>& scratch) {
  const int total = static_cast<int>(samples.size());
  const double parent = weighted_gini(node_counts, total);

  // sqrt(v) candidate features, sampled without replacement
  const std::size_t mtry =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(d.v))));
  std::vector<std::size_t> feats(d.v);
  std::iota(feats.begin(), feats.end(), std::size_t{0});
  for (std::size_t k = 0; k < mtry; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, d.v - 1);
    std::swap(feats[k], feats[pick(rng)]);
  }

  SplitResult best;
  best.impurity = parent;
  std::vector<int> left_counts(node_counts.size());
  for (std::size_t k = 0; k < mtry; ++k) {
    const std::size_t f = feats[k];
    scratch.clear();
    for (std::size_t idx : samples) scratch.emplace_back(d.at(idx, f), d.labels[idx]);
    std::sort(scratch.begin(), scratch.end());
    std::fill(left_counts.begin(), left_counts.end(), 0);
    int left_total = 0;
    for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
      ++left_counts[static_cast<std::size_t>(scratch[i].second)];
      ++left_total;
      if (scratch[i].first == scratch[i + 1].first) continue;
      std::vector<int> right_counts(node_counts);
      for (std::size_t c = 0; c < right_counts.size(); ++c) right_counts[c] -= left_counts[c];
      const double imp = weighted_gini(left_counts, left_total) +
                         weighted_gini(right_counts, total - left_total);
      if (imp < best.impurity - 1e-12) {
        best.impurity = imp;
        best.feature = static_cast<int>(f);
        best.threshold = 0.5 * (scratch[i].first + scratch[i + 1].first);
        best.found = true;
      }
    }
  }
  return best;
}

int predict_tree(const Tree& tree, const Dataset& d, std::size_t row) {
  int node = 0;
  while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& nd = tree.nodes[static_cast<std::size_t>(node)];
    node = d.at(row, static_cast<std::size_t>(nd.feature)) <= nd.threshold ? nd.left : nd.right;
  }
  return tree.nodes[static_cast<std::size_t>(node)].label;
}

void build_node(const Dataset& d, const RfParams& params, std::vector<std::size_t>& samples,
                int depth, std::mt19937_64& rng, Tree& tree, int node_index,
                std::vector<std::pair<double, int>>& scratch) {
  std::vector<int> counts(static_cast<std::size_t>(d.m), 0);
  for (std::size_t idx : samples) ++counts[static_cast<std::size_t>(d.labels[idx])];
  TreeNode& node = tree.nodes[static_cast<std::size_t>(node_index)];
  node.label = majority_label(counts);

  const bool pure = counts[static_cast<std::size_t>(node.label)] == static_cast<int>(samples.size());
  const bool depth_capped = params.max_depth >= 0 && depth >= params.max_depth;
  if (pure || depth_capped || static_cast<int>(samples.size()) < params.min_samples_split) return;

  const SplitResult split = best_split(d, samples, counts, rng, scratch);
  if (!split.found) return;

  std::vector<std::size_t> left, right;
  for (std::size_t idx : samples) {
    if (d.at(idx, static_cast<std::size_t>(split.feature)) <= split.threshold)
      left.push_back(idx);
    else
      right.push_back(idx);
  }
  if (left.empty() || right.empty()) return;
  samples.clear();
  samples.shrink_to_fit();

  const int left_index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  const int right_index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  {
    TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_index)];
    nd.feature = split.feature;
    nd.threshold = split.threshold;
    nd.left = left_index;
    nd.right = right_index;
  }
  build_node(d, params, left, depth + 1, rng, tree, left_index, scratch);
  build_node(d, params, right, depth + 1, rng, tree, right_index, scratch);
}

}  // namespace

int ForestModel::predict(const Dataset& d, std::size_t row) const {
  std::vector<int> votes;
  for (const Tree& tree : trees) {
    const int p = predict_tree(tree, d, row);
    if (p >= static_cast<int>(votes.size())) votes.resize(static_cast<std::size_t>(p) + 1, 0);
    ++votes[static_cast<std::size_t>(p)];
  }
  return majority_label(votes);
}

TrainOutcome train_random_forest(const Dataset& d, const ModelSpec& spec) {
  d.validate();
  if (spec.rf.trees < 1) throw std::invalid_argument("rf: trees >= 1");
  if (spec.rf.min_samples_split < 2) throw std::invalid_argument("rf: min_samples_split >= 2");

  auto model = std::make_shared<ForestModel>();
  model->trees.reserve(static_cast<std::size_t>(spec.rf.trees));
  std::vector<std::pair<double, int>> scratch;
  for (int t = 0; t < spec.rf.trees; ++t) {
    std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(t) + 1);
    Tree tree;
    tree.bootstrap.resize(d.n);
    std::uniform_int_distribution<std::size_t> pick(0, d.n - 1);
    for (std::size_t i = 0; i < d.n; ++i) tree.bootstrap[i] = pick(rng);

    tree.nodes.emplace_back();
    std::vector<std::size_t> samples = tree.bootstrap;
    build_node(d, spec.rf, samples, 0, rng, tree, 0, scratch);

    std::size_t correct = 0;
    for (std::size_t idx : tree.bootstrap)
      if (predict_tree(tree, d, idx) == d.labels[idx]) ++correct;
    tree.bootstrap_accuracy = static_cast<double>(correct) / static_cast<double>(d.n);
    model->trees.push_back(std::move(tree));
  }

  std::size_t correct = 0;
  for (std::size_t i = 0; i < d.n; ++i)
    if (model->predict(d, i) == d.labels[i]) ++correct;

  TrainOutcome out;
  out.trees = spec.rf.trees;
  out.train_accuracy = static_cast<double>(correct) / static_cast<double>(d.n);
  out.forest_model = model;
  return out;
}

TrainOutcome train(const Dataset& d, const ModelSpec& spec) {
  return spec.kind == ModelKind::LogReg ? train_logreg(d, spec) : train_random_forest(d, spec);
}

std::string structure_digest(const TrainOutcome& outcome) {
  std::ostringstream os;
  os.precision(17);
  if (outcome.logreg_model) {
    for (const auto& clf : outcome.logreg_model->classifiers) {
      os << "b:" << clf.bias << ';';
      for (double w : clf.weights) os << w << ',';
    }
  }
  if (outcome.forest_model) {
    for (const Tree& tree : outcome.forest_model->trees) {
      os << "T";
      for (const TreeNode& nd : tree.nodes)
        os << '(' << nd.feature << ',' << nd.threshold << ',' << nd.left << ',' << nd.right << ','
           << nd.label << ')';
    }
  }
  return os.str();
}

}  // namespace traintime
