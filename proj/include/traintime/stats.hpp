#pragma once

#include <cstddef>
#include <vector>

namespace traintime {

// Basic sample aggregates. std uses the sample (n-1) convention; timing
// spreads reported as "mean +- std" use this.
struct Summary {
  double mean = 0.0;
  double std = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(const std::vector<double>& values);

double median_of(std::vector<double> values);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation, converged to 1e-12.
double regularized_incomplete_beta(double a, double b, double x);

// Survival function of the F distribution: P(F_{d1,d2} > f).
double f_survival(double f, int d1, int d2);

}  // namespace traintime
