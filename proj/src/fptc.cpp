#include "traintime/fptc.hpp"

#include <cmath>
#include <stdexcept>

namespace traintime {

double raw_fptc_logreg(double q, int m, std::size_t v, std::size_t n) {
  if (q < 1.0) throw std::invalid_argument("fptc: iteration count q must be >= 1");
  if (m < 1 || v < 1 || n < 1) throw std::invalid_argument("fptc: invalid dimensions");
  const double md = static_cast<double>(m);
  return q * md * md * static_cast<double>(v) * static_cast<double>(n);
}

double raw_fptc_rf(int s, int m, std::size_t n, std::size_t v) {
  if (s < 1) throw std::invalid_argument("fptc: tree count s must be >= 1");
  if (m < 1 || v < 1 || n < 1) throw std::invalid_argument("fptc: invalid dimensions");
  return static_cast<double>(s) * (static_cast<double>(m) + 1.0) * static_cast<double>(n) *
         static_cast<double>(v) * std::log2(static_cast<double>(n));
}

double predict_time(double raw, const Slope& slope) {
  if (raw < 0.0) throw std::invalid_argument("fptc: raw score must be >= 0");
  if (slope.omega <= 0.0) throw std::invalid_argument("fptc: slope omega must be > 0");
  return raw * slope.omega;
}

}  // namespace traintime
