#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "traintime/dataset.hpp"

using namespace traintime;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("generate_synthetic dimensions and round-robin labels") {
  const Dataset d = generate_synthetic({20, 3, 3, 1, 2.0});
  CHECK(d.n == 20);
  CHECK(d.v == 3);
  CHECK(d.m == 3);
  for (std::size_t i = 0; i < d.n; ++i) CHECK(d.labels[i] == static_cast<int>(i % 3));
  d.validate();
}

TEST_CASE("generate_synthetic minimal dataset has one row per class") {
  const Dataset d = generate_synthetic({2, 1, 2, 0, 1.0});
  CHECK(d.n == 2);
  CHECK(d.labels[0] == 0);
  CHECK(d.labels[1] == 1);
}

TEST_CASE("generate_synthetic rejects invalid dimensions") {
  CHECK_THROWS_AS(generate_synthetic({0, 5, 2, 0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic({5, 0, 2, 0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic({5, 5, 1, 0, 1.0}), std::invalid_argument);
}

TEST_CASE("generate_synthetic is deterministic, parallel == serial") {
  const SyntheticSpec spec{123, 37, 2, 99, 3.0};
  const Dataset a = generate_synthetic(spec);
  const Dataset b = generate_synthetic(spec);
  CHECK(a.features == b.features);  // bit-identical
  const Dataset s = generate_synthetic_serial(spec);
  CHECK(a.features == s.features);
  CHECK(a.labels == s.labels);
}

TEST_CASE("standardize hand-checked column") {
  Dataset d;
  d.n = 3;
  d.v = 2;
  d.m = 2;
  d.features = {1, 5, 2, 5, 3, 5};  // col0 = [1,2,3], col1 constant
  d.labels = {0, 1, 0};
  const Dataset z = standardize(d);
  // (x - 2) / sqrt(2/3)
  CHECK(z.at(0, 0) == doctest::Approx(-1.2247448).epsilon(1e-6));
  CHECK(z.at(1, 0) == doctest::Approx(0.0));
  CHECK(z.at(2, 0) == doctest::Approx(1.2247448).epsilon(1e-6));
  CHECK(z.at(0, 1) == 0.0);  // zero-variance rule
  CHECK(z.at(1, 1) == 0.0);
  CHECK(z.at(2, 1) == 0.0);
  CHECK(z.labels == d.labels);
}

TEST_CASE("standardize moments and idempotence") {
  const Dataset d = generate_synthetic({200, 8, 2, 5, 4.0});
  const Dataset z = standardize(d);
  for (std::size_t j = 0; j < z.v; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < z.n; ++i) mean += z.at(i, j);
    mean /= z.n;
    double var = 0.0;
    for (std::size_t i = 0; i < z.n; ++i) var += (z.at(i, j) - mean) * (z.at(i, j) - mean);
    var /= z.n;
    CHECK(std::fabs(mean) < 1e-9);
    CHECK(std::fabs(std::sqrt(var) - 1.0) < 1e-6);
  }
  const Dataset zz = standardize(z);
  for (std::size_t i = 0; i < z.features.size(); ++i)
    CHECK(std::fabs(zz.features[i] - z.features[i]) < 1e-9);

  const Dataset zs = standardize_serial(d);
  CHECK(zs.features == z.features);
}

TEST_CASE("take_features prefixes") {
  const Dataset d = generate_synthetic({10, 12, 2, 3, 1.0});
  const Dataset k = take_features(d, 5);
  CHECK(k.v == 5);
  CHECK(k.n == d.n);
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(k.at(i, j) == d.at(i, j));

  CHECK(take_features(d, d.v).features == d.features);  // identity case

  // prefix nesting
  const Dataset ab = take_features(take_features(d, 9), 4);
  const Dataset direct = take_features(d, 4);
  CHECK(ab.features == direct.features);

  CHECK_THROWS_AS(take_features(d, 0), std::out_of_range);
  CHECK_THROWS_AS(take_features(d, 13), std::out_of_range);
}

TEST_CASE("take_rows prefixes") {
  const Dataset d = generate_synthetic({50, 4, 2, 3, 1.0});
  const Dataset r = take_rows(d, 10);
  CHECK(r.n == 10);
  CHECK(r.v == d.v);
  CHECK(take_rows(d, d.n).features == d.features);

  // commutes with take_features
  const Dataset a = take_rows(take_features(d, 2), 7);
  const Dataset b = take_features(take_rows(d, 7), 2);
  CHECK(a.features == b.features);
  CHECK(a.labels == b.labels);

  CHECK_THROWS_AS(take_rows(d, 0), std::out_of_range);
  CHECK_THROWS_AS(take_rows(d, 51), std::out_of_range);
  // single-class prefix
  CHECK_THROWS_AS(take_rows(d, 1), std::invalid_argument);
}

TEST_CASE("load_csv encodes labels by first appearance") {
  const auto path = temp_file("traintime_labels.csv");
  write_file(path, "a,b,label\n1,2,yes\n3,4,no\n5,6,yes\n");
  const Dataset d = load_csv(path.string(), "label");
  CHECK(d.n == 3);
  CHECK(d.v == 2);
  CHECK(d.m == 2);
  CHECK(d.labels == std::vector<int>{0, 1, 0});
  CHECK(d.at(1, 1) == 4.0);
}

TEST_CASE("load_csv error paths") {
  CHECK_THROWS_WITH_AS(load_csv("/nonexistent/x.csv", "label"),
                       doctest::Contains("cannot open"), std::runtime_error);

  const auto missing_col = temp_file("traintime_missing_col.csv");
  write_file(missing_col, "a,b\n1,2\n");
  CHECK_THROWS_WITH_AS(load_csv(missing_col.string(), "label"), doctest::Contains("label column"),
                       std::runtime_error);

  const auto bad_cell = temp_file("traintime_bad_cell.csv");
  write_file(bad_cell, "a,label\nx,yes\n1,no\n");
  CHECK_THROWS_WITH_AS(load_csv(bad_cell.string(), "label"), doctest::Contains("non-numeric"),
                       std::runtime_error);

  const auto empty = temp_file("traintime_empty.csv");
  write_file(empty, "");
  CHECK_THROWS_AS(load_csv(empty.string(), "label"), std::runtime_error);

  const auto one_class = temp_file("traintime_one_class.csv");
  write_file(one_class, "a,label\n1,yes\n2,yes\n");
  CHECK_THROWS_AS(load_csv(one_class.string(), "label"), std::invalid_argument);
}

TEST_CASE("save/load csv round-trips") {
  const Dataset d = generate_synthetic({30, 5, 3, 17, 2.0});
  const auto path = temp_file("traintime_roundtrip.csv");
  save_csv(d, path.string());
  const Dataset back = load_csv(path.string(), "label");
  CHECK(back.n == d.n);
  CHECK(back.v == d.v);
  CHECK(back.m == d.m);
  CHECK(back.labels == d.labels);
  for (std::size_t i = 0; i < d.features.size(); ++i)
    CHECK(back.features[i] == doctest::Approx(d.features[i]).epsilon(1e-15));
}
