#pragma once

#include <cstddef>
#include <span>

namespace fkglab {

double normal_cdf(double x);
// Inverse standard normal CDF, p in (0,1). Acklam's rational approximation
// polished with one Halley step, good to ~1e-14.
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a,x), series/continued-fraction.
double regularized_gamma_p(double a, double x);

double chi_square_cdf(double x, int dof);
double chi_square_quantile(double p, int dof);

struct ChiSquareGof {
  double statistic;
  int dof;
  double critical;  // quantile at the requested level
  bool rejected;    // statistic > critical
};

// Pearson goodness-of-fit of observed counts against expected counts
// (same length, expected > 0, equal totals assumed).
ChiSquareGof chi_square_gof(std::span<const double> observed,
                            std::span<const double> expected, double level);

}  // namespace fkglab
