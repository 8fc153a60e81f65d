#include <doctest.h>

#include <algorithm>
#include <random>

#include "traintime/dataset.hpp"
#include "traintime/trainers.hpp"

using namespace traintime;

namespace {

Dataset separable_blobs(std::size_t n, std::size_t v, double separation, std::uint64_t seed = 11) {
  return standardize(generate_synthetic({n, v, 2, seed, separation}));
}

}  // namespace

TEST_CASE("logreg separates well-separated blobs") {
  const Dataset d = separable_blobs(500, 10, 5.0);
  ModelSpec spec;
  spec.kind = ModelKind::LogReg;
  spec.logreg.max_iterations = 200;
  const TrainOutcome out = train_logreg(d, spec);
  CHECK(out.train_accuracy >= 0.95);
  CHECK(out.iterations >= 1);
  CHECK(out.iterations <= 200);
}

TEST_CASE("logreg iteration cap binds") {
  const Dataset d = separable_blobs(100, 5, 2.0);
  ModelSpec spec;
  spec.logreg.max_iterations = 1;
  CHECK(train_logreg(d, spec).iterations == 1.0);
}

TEST_CASE("logreg with zero tolerance runs exactly max_iterations epochs") {
  const Dataset d = separable_blobs(80, 4, 2.0);
  ModelSpec spec;
  spec.logreg.max_iterations = 17;
  spec.logreg.tolerance = 0.0;
  CHECK(train_logreg(d, spec).iterations == 17.0);
}

TEST_CASE("logreg final loss does not exceed the zero-weight loss") {
  const Dataset d = separable_blobs(300, 8, 3.0);
  ModelSpec spec;
  spec.logreg.max_iterations = 100;
  const TrainOutcome out = train_logreg(d, spec);
  REQUIRE(out.logreg_model);
  CHECK(out.logreg_model->final_loss <= out.logreg_model->initial_loss);
}

TEST_CASE("logreg is bit-deterministic under a fixed seed") {
  const Dataset d = separable_blobs(150, 6, 2.0);
  ModelSpec spec;
  spec.logreg.max_iterations = 30;
  spec.seed = 77;
  const TrainOutcome a = train_logreg(d, spec);
  const TrainOutcome b = train_logreg(d, spec);
  CHECK(a.logreg_model->classifiers[0].weights == b.logreg_model->classifiers[0].weights);
  CHECK(a.logreg_model->classifiers[0].bias == b.logreg_model->classifiers[0].bias);
  CHECK(structure_digest(a) == structure_digest(b));
}

TEST_CASE("logreg handles three classes one-vs-rest") {
  // three blobs with pairwise-orthogonal mean offsets, so every class is
  // linearly separable from the rest
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset d;
  d.n = 300;
  d.v = 3;
  d.m = 3;
  d.features.resize(d.n * d.v);
  d.labels.resize(d.n);
  for (std::size_t i = 0; i < d.n; ++i) {
    const int label = static_cast<int>(i % 3);
    d.labels[i] = label;
    for (std::size_t j = 0; j < d.v; ++j)
      d.at(i, j) = noise(rng) + (static_cast<std::size_t>(label) == j ? 8.0 : 0.0);
  }
  ModelSpec spec;
  spec.logreg.max_iterations = 100;
  const TrainOutcome out = train_logreg(standardize(d), spec);
  REQUIRE(out.logreg_model);
  CHECK(out.logreg_model->classifiers.size() == 3);
  CHECK(out.train_accuracy >= 0.9);
}

TEST_CASE("random forest reports the configured tree count") {
  const Dataset d = separable_blobs(60, 5, 2.0);
  ModelSpec spec;
  spec.kind = ModelKind::RandomForest;
  spec.rf.trees = 100;
  CHECK(train_random_forest(d, spec).trees == 100);
  spec.rf.trees = 7;
  CHECK(train_random_forest(d, spec).trees == 7);
}

TEST_CASE("single unpruned tree near-memorizes its bootstrap sample") {
  const Dataset d = separable_blobs(50, 5, 3.0);
  ModelSpec spec;
  spec.kind = ModelKind::RandomForest;
  spec.rf.trees = 1;
  spec.rf.max_depth = -1;
  const TrainOutcome out = train_random_forest(d, spec);
  REQUIRE(out.forest_model);
  CHECK(out.forest_model->trees[0].bootstrap_accuracy >= 0.98);
}

TEST_CASE("every tree beats the majority-class baseline on its bootstrap sample") {
  const Dataset d = separable_blobs(120, 6, 2.0, 23);
  ModelSpec spec;
  spec.kind = ModelKind::RandomForest;
  spec.rf.trees = 15;
  const TrainOutcome out = train_random_forest(d, spec);
  for (const Tree& tree : out.forest_model->trees) {
    std::vector<int> counts(static_cast<std::size_t>(d.m), 0);
    for (std::size_t idx : tree.bootstrap) ++counts[static_cast<std::size_t>(d.labels[idx])];
    const double baseline =
        static_cast<double>(*std::max_element(counts.begin(), counts.end())) / d.n;
    CHECK(tree.bootstrap_accuracy >= baseline);
  }
}

TEST_CASE("random forest split structure is deterministic under a fixed seed") {
  const Dataset d = separable_blobs(80, 6, 2.0);
  ModelSpec spec;
  spec.kind = ModelKind::RandomForest;
  spec.rf.trees = 5;
  spec.seed = 9;
  CHECK(structure_digest(train_random_forest(d, spec)) ==
        structure_digest(train_random_forest(d, spec)));
}

TEST_CASE("train dispatches on kind") {
  const Dataset d = separable_blobs(60, 4, 2.0);
  ModelSpec spec;
  spec.kind = ModelKind::RandomForest;
  spec.rf.trees = 3;
  CHECK(train(d, spec).trees == 3);
  spec.kind = ModelKind::LogReg;
  spec.logreg.max_iterations = 5;
  CHECK(train(d, spec).iterations >= 1);
}

TEST_CASE("model kind names round-trip") {
  CHECK(model_kind_from_string(to_string(ModelKind::LogReg)) == ModelKind::LogReg);
  CHECK(model_kind_from_string(to_string(ModelKind::RandomForest)) == ModelKind::RandomForest);
  CHECK_THROWS_AS(model_kind_from_string("svm"), std::invalid_argument);
}
