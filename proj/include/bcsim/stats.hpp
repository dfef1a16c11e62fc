#pragma once

#include <vector>

namespace bcsim::stats {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double confidence_level = 0.95;
};

// Regularized incomplete beta function I_x(a, b), evaluated by the Lentz
// continued fraction. Absolute accuracy better than 1e-13 over the domain
// used here (verified against quadrature in the test suite).
double incomplete_beta(double a, double b, double x);

// Student t distribution function and quantile for real-valued degrees of
// freedom. The quantile inverts the CDF by bisection to 1e-12.
double student_t_cdf(double t, double df);
double student_t_quantile(double p, double df);

// Sample mean with a two-sided Student t confidence interval.
SampleSummary mean_ci(const std::vector<double>& samples, double level);

// Two-sided Welch unequal-variance t-test p-value, Welch-Satterthwaite
// degrees of freedom. Two constant samples with equal means give p = 1 by
// convention; constant samples with different means are a domain error.
double welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

std::vector<double> scale_results(const std::vector<double>& series, double scale_factor);

}  // namespace bcsim::stats
