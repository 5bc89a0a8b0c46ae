#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace irg::stats {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  double sd = 0.0;
};

MeanSe mean_se(std::span<const double> x);
double median(std::vector<double> x);

struct Wilson {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval, 95% by default.
Wilson wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

struct ChiSquare {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

/// Two-sample homogeneity test on integer-valued samples. Adjacent values are
/// pooled until every cell has an expected count of at least 5 in both samples.
ChiSquare chi_square_two_sample(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Goodness of fit of observed counts against probabilities (cells pooled the same way).
ChiSquare chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probs);

/// sup |F_a - F_b| of the empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Weighted least-squares non-increasing fit (pool adjacent violators).
std::vector<double> isotonic_nonincreasing(std::span<const double> y, std::span<const double> w);

}  // namespace irg::stats
