#include "traintime/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace traintime {

void Dataset::validate() const {
  if (n < 1 || v < 1 || m < 2)
    throw std::invalid_argument("dataset: need n >= 1, v >= 1, m >= 2 (got n=" +
                                std::to_string(n) + " v=" + std::to_string(v) +
                                " m=" + std::to_string(m) + ")");
  if (labels.size() != n || features.size() != n * v)
    throw std::invalid_argument("dataset: storage does not match declared dimensions");
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0 || labels[i] >= m)
      throw std::invalid_argument("dataset: label out of range at row " + std::to_string(i));
    seen[static_cast<std::size_t>(labels[i])] = true;
  }
  for (int c = 0; c < m; ++c)
    if (!seen[static_cast<std::size_t>(c)])
      throw std::invalid_argument("dataset: class " + std::to_string(c) + " has no rows");
  for (double x : features)
    if (!std::isfinite(x)) throw std::invalid_argument("dataset: non-finite feature value");
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based per-row stream so rows can be generated in any order (and in
// parallel) with bit-identical output.
struct RowRng {
  std::uint64_t state;

  explicit RowRng(std::uint64_t seed, std::uint64_t row) {
    std::uint64_t s = seed;
    state = splitmix64(s) ^ (row * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    splitmix64(state);
  }

  double uniform01() {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  }

  double normal() {
    // Box-Muller; one value per call, the sine branch is discarded.
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

void check_spec(const SyntheticSpec& spec) {
  if (spec.n < 1 || spec.v < 1 || spec.m < 2)
    throw std::invalid_argument("synthetic spec: need n >= 1, v >= 1, m >= 2");
  if (spec.class_separation < 0.0)
    throw std::invalid_argument("synthetic spec: class_separation must be >= 0");
}

void fill_row(const SyntheticSpec& spec, std::size_t row, double* out) {
  RowRng rng(spec.seed, row);
  const int label = static_cast<int>(row % static_cast<std::size_t>(spec.m));
  const double shift =
      spec.class_separation * static_cast<double>(label) / std::sqrt(static_cast<double>(spec.v));
  for (std::size_t j = 0; j < spec.v; ++j) out[j] = rng.normal() + shift;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  check_spec(spec);
  Dataset d;
  d.n = spec.n;
  d.v = spec.v;
  d.m = spec.m;
  d.features.resize(d.n * d.v);
  d.labels.resize(d.n);
  const auto n = static_cast<std::ptrdiff_t>(d.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto row = static_cast<std::size_t>(i);
    d.labels[row] = static_cast<int>(row % static_cast<std::size_t>(spec.m));
    fill_row(spec, row, d.features.data() + row * d.v);
  }
  return d;
}

Dataset generate_synthetic_serial(const SyntheticSpec& spec) {
  check_spec(spec);
  Dataset d;
  d.n = spec.n;
  d.v = spec.v;
  d.m = spec.m;
  d.features.resize(d.n * d.v);
  d.labels.resize(d.n);
  for (std::size_t row = 0; row < d.n; ++row) {
    d.labels[row] = static_cast<int>(row % static_cast<std::size_t>(spec.m));
    fill_row(spec, row, d.features.data() + row * d.v);
  }
  return d;
}

namespace {

void standardize_column(const Dataset& in, Dataset& out, std::size_t col) {
  double sum = 0.0;
  for (std::size_t i = 0; i < in.n; ++i) sum += in.at(i, col);
  const double mean = sum / static_cast<double>(in.n);
  double ss = 0.0;
  for (std::size_t i = 0; i < in.n; ++i) {
    const double c = in.at(i, col) - mean;
    ss += c * c;
  }
  const double sd = std::sqrt(ss / static_cast<double>(in.n));  // population std
  if (sd == 0.0) {
    for (std::size_t i = 0; i < in.n; ++i) out.at(i, col) = 0.0;
  } else {
    for (std::size_t i = 0; i < in.n; ++i) out.at(i, col) = (in.at(i, col) - mean) / sd;
  }
}

}  // namespace

Dataset standardize(const Dataset& d) {
  d.validate();
  Dataset out = d;
  const auto v = static_cast<std::ptrdiff_t>(d.v);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < v; ++j) standardize_column(d, out, static_cast<std::size_t>(j));
  return out;
}

Dataset standardize_serial(const Dataset& d) {
  d.validate();
  Dataset out = d;
  for (std::size_t j = 0; j < d.v; ++j) standardize_column(d, out, j);
  return out;
}

Dataset take_features(const Dataset& d, std::size_t k) {
  if (k < 1 || k > d.v)
    throw std::out_of_range("take_features: k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(d.v) + "]");
  Dataset out;
  out.n = d.n;
  out.v = k;
  out.m = d.m;
  out.labels = d.labels;
  out.features.resize(d.n * k);
  for (std::size_t i = 0; i < d.n; ++i)
    std::copy_n(d.features.data() + i * d.v, k, out.features.data() + i * k);
  return out;
}

Dataset take_rows(const Dataset& d, std::size_t r) {
  if (r < 1 || r > d.n)
    throw std::out_of_range("take_rows: r=" + std::to_string(r) + " outside [1, " +
                            std::to_string(d.n) + "]");
  Dataset out;
  out.n = r;
  out.v = d.v;
  out.m = d.m;
  out.features.assign(d.features.begin(), d.features.begin() + static_cast<std::ptrdiff_t>(r * d.v));
  out.labels.assign(d.labels.begin(), d.labels.begin() + static_cast<std::ptrdiff_t>(r));
  const int first = out.labels.front();
  bool mixed = false;
  for (int lab : out.labels)
    if (lab != first) {
      mixed = true;
      break;
    }
  if (!mixed)
    throw std::invalid_argument("take_rows: first " + std::to_string(r) +
                                " rows contain a single class");
  return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: '" + path + "' is empty");

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(s);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };

  const std::vector<std::string> header = split(line);
  std::size_t label_idx = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) label_idx = j;
  if (label_idx == header.size())
    throw std::runtime_error("csv: label column '" + label_column + "' not found in '" + path + "'");
  if (header.size() < 2) throw std::runtime_error("csv: no feature columns in '" + path + "'");

  Dataset d;
  d.v = header.size() - 1;
  std::vector<std::string> label_order;  // dense codes in order of first appearance
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size())
      throw std::runtime_error("csv: row " + std::to_string(row) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(header.size()));
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j == label_idx) {
        const auto it = std::find(label_order.begin(), label_order.end(), cells[j]);
        if (it == label_order.end()) {
          d.labels.push_back(static_cast<int>(label_order.size()));
          label_order.push_back(cells[j]);
        } else {
          d.labels.push_back(static_cast<int>(it - label_order.begin()));
        }
      } else {
        std::size_t pos = 0;
        double value = 0.0;
        try {
          value = std::stod(cells[j], &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos != cells[j].size() || cells[j].empty())
          throw std::runtime_error("csv: non-numeric cell '" + cells[j] + "' at row " +
                                   std::to_string(row) + ", column '" + header[j] + "'");
        d.features.push_back(value);
      }
    }
  }
  if (row == 0) throw std::runtime_error("csv: '" + path + "' has a header but no data rows");
  d.n = row;
  d.m = static_cast<int>(label_order.size());
  d.validate();
  return d;
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write '" + path + "'");
  out.precision(17);
  for (std::size_t j = 0; j < d.v; ++j) out << 'f' << j << ',';
  out << "label\n";
  for (std::size_t i = 0; i < d.n; ++i) {
    for (std::size_t j = 0; j < d.v; ++j) out << d.at(i, j) << ',';
    out << d.labels[i] << '\n';
  }
  if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

}  // namespace traintime
