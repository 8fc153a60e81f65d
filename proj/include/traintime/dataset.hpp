#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace traintime {

// Dense labeled numeric table. Rows are stored row-major; labels are dense
// class indices in [0, m). Immutable by convention: every operation returns
// a new Dataset.
struct Dataset {
  std::vector<double> features;  // n * v, row-major
  std::vector<int> labels;       // length n
  std::size_t n = 0;             // rows
  std::size_t v = 0;             // features
  int m = 0;                     // classes

  double at(std::size_t row, std::size_t col) const { return features[row * v + col]; }
  double& at(std::size_t row, std::size_t col) { return features[row * v + col]; }

  // Throws std::invalid_argument on any invariant violation (dimensions,
  // label range, missing class, non-finite feature).
  void validate() const;
};

struct SyntheticSpec {
  std::size_t n = 0;
  std::size_t v = 0;
  int m = 2;
  std::uint64_t seed = 0;
  double class_separation = 2.0;
};

// Per-class Gaussian blobs with round-robin labels. Pure function of the
// spec: identical specs give bit-identical datasets, and the OpenMP and
// serial paths agree exactly (each row draws from its own seeded stream).
Dataset generate_synthetic(const SyntheticSpec& spec);
Dataset generate_synthetic_serial(const SyntheticSpec& spec);

// Z-score each column (population std); zero-variance columns map to zeros.
Dataset standardize(const Dataset& d);
Dataset standardize_serial(const Dataset& d);

// First k columns, all rows.
Dataset take_features(const Dataset& d, std::size_t k);

// First r rows, all columns. The prefix must contain >= 2 distinct labels.
Dataset take_rows(const Dataset& d, std::size_t r);

Dataset load_csv(const std::string& path, const std::string& label_column);
void save_csv(const Dataset& d, const std::string& path);

}  // namespace traintime
