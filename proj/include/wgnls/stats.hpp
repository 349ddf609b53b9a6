#pragma once

#include <span>
#include <vector>

namespace wgnls {

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

// Ordinary least squares y ~ slope*x + intercept; needs >= 2 points.
LinFit linear_fit(std::span<const double> x, std::span<const double> y);

// Quantile of an unsorted sample by linear interpolation, q in [0, 1].
double quantile(std::vector<double> values, double q);

inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

}  // namespace wgnls
