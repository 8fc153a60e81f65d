#pragma once

#include <cstddef>
#include <string>

namespace traintime {

// Calibrated environment coefficient: seconds per raw-complexity unit,
// tagged with the feature count of the calibration subset it came from.
struct Slope {
  double omega = 0.0;
  std::size_t feature_count = 0;
  std::string environment;
};

// Raw complexity product for logistic regression: q * m^2 * v * n.
double raw_fptc_logreg(double q, int m, std::size_t v, std::size_t n);

// Raw complexity product for random forest: s * (m+1) * n * v * log2(n).
// n = 1 yields 0.
double raw_fptc_rf(int s, int m, std::size_t n, std::size_t v);

// raw * omega, in seconds.
double predict_time(double raw, const Slope& slope);

}  // namespace traintime
