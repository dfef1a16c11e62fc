#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bcsim/stats.hpp"

using namespace bcsim::stats;

namespace {

// Simpson-rule integral of the t density on [0, hi]; independent oracle for
// the CDF implementation.
double t_density_integral(double df, double hi, int steps = 40000) {
  const double c = std::exp(std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df)) /
                   std::sqrt(df * 3.14159265358979323846);
  auto density = [&](double x) {
    return c * std::pow(1.0 + x * x / df, -0.5 * (df + 1.0));
  };
  const double h = hi / steps;
  double sum = density(0.0) + density(hi);
  for (int i = 1; i < steps; ++i) sum += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("student t distribution against closed forms and quadrature") {
  // df = 1 is a Cauchy: F(1) = 3/4, quantile(0.975) = tan(0.475 * pi)
  CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(student_t_quantile(0.975, 1.0) ==
        doctest::Approx(12.706204736174696).epsilon(1e-9));
  // published df = 2 critical value
  CHECK(student_t_quantile(0.975, 2.0) ==
        doctest::Approx(4.302652729911275).epsilon(1e-9));
  CHECK(student_t_quantile(0.5, 7.0) == 0.0);
  CHECK(student_t_quantile(0.025, 2.0) ==
        doctest::Approx(-4.302652729911275).epsilon(1e-9));

  SUBCASE("CDF matches brute-force density integration to 1e-6") {
    for (double df : {1.0, 2.0, 5.0, 8.0, 30.5, 99.0}) {
      for (double t : {0.3, 1.0, 2.5, 6.0}) {
        const double expected = 0.5 + t_density_integral(df, t);
        CHECK(std::abs(student_t_cdf(t, df) - expected) < 1e-6);
        CHECK(student_t_cdf(-t, df) ==
              doctest::Approx(1.0 - student_t_cdf(t, df)).epsilon(1e-12));
      }
    }
  }

  SUBCASE("quantile inverts the CDF to 1e-10") {
    for (double df : {1.0, 3.0, 9.0, 42.0, 99.0}) {
      for (double p : {0.6, 0.9, 0.975, 0.999, 0.1, 0.025}) {
        CHECK(std::abs(student_t_cdf(student_t_quantile(p, df), df) - p) < 1e-10);
      }
    }
  }
}

TEST_CASE("incomplete beta sanity") {
  CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(incomplete_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
  // I_x(2,2) = 3x^2 - 2x^3
  CHECK(incomplete_beta(2.0, 2.0, 0.25) ==
        doctest::Approx(3 * 0.0625 - 2 * 0.015625).epsilon(1e-13));
  CHECK(incomplete_beta(0.5, 0.5, 0.0) == 0.0);
  CHECK(incomplete_beta(0.5, 0.5, 1.0) == 1.0);
  CHECK_THROWS_AS(incomplete_beta(-1.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(incomplete_beta(1.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("mean_ci") {
  SUBCASE("zero variance collapses the interval") {
    const auto s = mean_ci({5, 5, 5, 5}, 0.95);
    CHECK(s.mean == 5.0);
    CHECK(s.ci_low == 5.0);
    CHECK(s.ci_high == 5.0);
    CHECK(s.sd == 0.0);
  }

  SUBCASE("hand-computed three-sample interval") {
    const auto s = mean_ci({1, 2, 3}, 0.95);
    CHECK(s.mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.sd == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.ci_low == doctest::Approx(-0.48413771184375287).epsilon(1e-9));
    CHECK(s.ci_high == doctest::Approx(4.484137711843752).epsilon(1e-9));
  }

  SUBCASE("componentwise linear in scaling") {
    const std::vector<double> xs = {3.0, 1.0, 4.0, 1.0, 5.0, 9.0};
    const auto base = mean_ci(xs, 0.9);
    const auto scaled = mean_ci(scale_results(xs, 7.5), 0.9);
    CHECK(scaled.mean == doctest::Approx(7.5 * base.mean).epsilon(1e-12));
    CHECK(scaled.ci_low == doctest::Approx(7.5 * base.ci_low).epsilon(1e-12));
    CHECK(scaled.ci_high == doctest::Approx(7.5 * base.ci_high).epsilon(1e-12));
  }

  SUBCASE("needs two samples and a proper level") {
    CHECK_THROWS_AS(mean_ci({1.0}, 0.95), std::domain_error);
    CHECK_THROWS_AS(mean_ci({1.0, 2.0}, 1.0), std::domain_error);
  }
}

TEST_CASE("welch_t_test") {
  SUBCASE("identical samples give p = 1") {
    const std::vector<double> a = {1, 2, 3, 4};
    CHECK(welch_t_test(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("hand-computed separated samples") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {11, 12, 13, 14, 15};
    // t = -10, Welch-Satterthwaite df = 8
    const double p = welch_t_test(a, b);
    CHECK(p == doctest::Approx(8.488181527654959e-06).epsilon(1e-6));
    CHECK(p < 0.001);
    CHECK(welch_t_test(b, a) == doctest::Approx(p).epsilon(1e-12));
  }

  SUBCASE("degenerate variance") {
    CHECK(welch_t_test({2, 2, 2}, {2, 2}) == 1.0);
    CHECK_THROWS_AS(welch_t_test({2, 2, 2}, {3, 3, 3}), std::domain_error);
  }
}

TEST_CASE("scale_results") {
  CHECK(scale_results({600.0}, 100.0)[0] == 60000.0);
  CHECK(scale_results({1.7e6}, 100.0)[0] == doctest::Approx(1.7e8));
  const std::vector<double> xs = {1, 2, 3};
  CHECK(scale_results(xs, 1.0) == xs);
  CHECK_THROWS_AS(scale_results(xs, 0.0), std::domain_error);
}

TEST_CASE("CI width decays like n^-1/2") {
  // regression of log(mean width) on log(n) over n = 10, 40, 160
  std::mt19937_64 rng(123);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> log_n, log_w;
  for (int n : {10, 40, 160}) {
    double width_sum = 0.0;
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
      std::vector<double> xs(n);
      for (auto& x : xs) x = normal(rng);
      const auto s = mean_ci(xs, 0.95);
      width_sum += s.ci_high - s.ci_low;
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_w.push_back(std::log(width_sum / reps));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_w[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_w[i];
  }
  const double n = 3.0;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope - (-0.5)) < 0.05);  // within 10% of the -1/2 exponent
}

TEST_CASE("welch p-values are uniform under the null") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int pairs = 1000;
  std::vector<double> pvals;
  pvals.reserve(pairs);
  for (int i = 0; i < pairs; ++i) {
    std::vector<double> a(30), b(30);
    for (auto& x : a) x = normal(rng);
    for (auto& x : b) x = normal(rng);
    pvals.push_back(welch_t_test(a, b));
  }
  std::sort(pvals.begin(), pvals.end());
  double ks = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const double lo = static_cast<double>(i) / pairs;
    const double hi = static_cast<double>(i + 1) / pairs;
    ks = std::max({ks, std::abs(pvals[i] - lo), std::abs(pvals[i] - hi)});
  }
  CHECK(ks < 0.05);
}

TEST_CASE("scaling commutes with summarizing") {
  const std::vector<double> xs = {10, 20, 40, 80, 30};
  const auto scaled_then = mean_ci(scale_results(xs, 100.0), 0.95);
  const auto then_scaled = mean_ci(xs, 0.95);
  CHECK(scaled_then.mean == doctest::Approx(100.0 * then_scaled.mean).epsilon(1e-12));
  CHECK(scaled_then.ci_low == doctest::Approx(100.0 * then_scaled.ci_low).epsilon(1e-12));
  CHECK(scaled_then.ci_high == doctest::Approx(100.0 * then_scaled.ci_high).epsilon(1e-12));
}
