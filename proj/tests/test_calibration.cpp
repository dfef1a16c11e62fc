#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bcsim/calibration.hpp"
#include "bcsim/errors.hpp"
#include "fixtures.hpp"

using namespace bcsim;
using namespace bcsim::calibration;

TEST_CASE("lambda_from_survival") {
  CHECK(lambda_from_survival(0.44).value == doctest::Approx(0.1642).epsilon(1e-4));
  CHECK(lambda_from_survival(0.23).value == doctest::Approx(0.2939).epsilon(1e-4));
  CHECK(lambda_from_survival(1.0).value == 0.0);
  CHECK(lambda_from_survival(0.44).unit == RateUnit::PerYear);
  CHECK_THROWS_AS(lambda_from_survival(0.0), std::domain_error);
  CHECK_THROWS_AS(lambda_from_survival(-0.5), std::domain_error);

  SUBCASE("inverse: 5-year survival recovered to 1e-12") {
    rng::SplitMix64 gen(11);
    for (int i = 0; i < 100; ++i) {
      const double s = 0.01 + 0.99 * gen.next_double();
      const double survived = 1.0 - rate_to_probability(lambda_from_survival(s), 5.0);
      CHECK(survived == doctest::Approx(s).epsilon(1e-12));
    }
  }
}

TEST_CASE("fit_healing_lambda") {
  constexpr double k = 1.0 / 3.0;

  CHECK(fit_healing_lambda(0.0, k) == 0.0);

  SUBCASE("forward product hits the target within 1e-9") {
    for (double dfs : {0.987, 0.873, 0.52, 0.037, 0.801, 0.708, 0.422, 0.03}) {
      const double lambda = fit_healing_lambda(dfs, k);
      CHECK(std::abs(cumulative_healing(lambda, k, 260) - dfs) <= 1e-9);
    }
  }

  SUBCASE("monotone in the target") {
    CHECK(fit_healing_lambda(0.52, k) < fit_healing_lambda(0.873, k));
    CHECK(fit_healing_lambda(0.873, k) < fit_healing_lambda(0.987, k));
  }

  SUBCASE("unreachable target is rejected") {
    // with k = 0.01 at most 1-(1-k)^260 ~= 0.9266 can heal
    CHECK_THROWS_AS(fit_healing_lambda(0.95, 0.01), ConfigError);
    CHECK_NOTHROW(fit_healing_lambda(0.90, 0.01));
  }

  SUBCASE("invalid domains") {
    CHECK_THROWS_AS(fit_healing_lambda(1.0, k), std::domain_error);
    CHECK_THROWS_AS(fit_healing_lambda(-0.1, k), std::domain_error);
    CHECK_THROWS_AS(fit_healing_lambda(0.5, 0.0), std::domain_error);
  }

  SUBCASE("Monte Carlo forward check, 2e5 persons, stage-3 target") {
    // competing-event-free cohort under the fitted per-cycle probability
    const double dfs = 0.52;
    const double lambda = fit_healing_lambda(dfs, k);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = 200000;
    int healed = 0;
    for (int i = 0; i < n; ++i) {
      for (int t = 1; t <= 260; ++t) {
        if (unif(rng) < k * -std::expm1(-lambda * t)) {
          ++healed;
          break;
        }
      }
    }
    const double frac = static_cast<double>(healed) / n;
    const double se = std::sqrt(dfs * (1.0 - dfs) / n);
    CHECK(std::abs(frac - dfs) <= 3.0 * se);
  }
}

TEST_CASE("project_prevalence") {
  PrevalenceSeries registry;
  registry.points = {{2010, 143911}, {2011, 151831}, {2012, 158534}, {2013, 166031},
                  {2014, 174005}, {2016, 227784}, {2017, 242838}};

  SUBCASE("published projection is reproduced") {
    const auto r = project_prevalence(registry, {2018, 2019});
    CHECK(std::abs(r[0] - 247013) <= 1);
    CHECK(std::abs(r[1] - 263590) <= 1);
  }

  SUBCASE("exact line through two points") {
    PrevalenceSeries s;
    s.points = {{2010, 100}, {2011, 200}};
    CHECK(project_prevalence(s, {2012})[0] == 300);
  }

  SUBCASE("flat series stays flat") {
    PrevalenceSeries s;
    s.points = {{2010, 100}, {2011, 100}};
    CHECK(project_prevalence(s, {2020})[0] == 100);
  }

  SUBCASE("invariant to reordering of input points") {
    PrevalenceSeries shuffled;
    shuffled.points = {{2016, 227784}, {2010, 143911}, {2017, 242838}, {2013, 166031},
                       {2011, 151831}, {2014, 174005}, {2012, 158534}};
    CHECK(project_prevalence(shuffled, {2019}) == project_prevalence(registry, {2019}));
  }

  SUBCASE("fewer than two points is a domain error") {
    PrevalenceSeries s;
    s.points = {{2010, 100}};
    CHECK_THROWS_AS(project_prevalence(s, {2011}), std::domain_error);
  }
}

TEST_CASE("estimate_undiagnosed") {
  ScreeningStats screening;
  screening.mammograms_performed = 1041000;
  screening.attendance_rate = 0.71;
  screening.positivity_rate = 263590.0 / 1041000.0;  // prevalent positives among attendees
  screening.detected_cases = 19620;

  SUBCASE("published estimate within 1%") {
    const auto n = estimate_undiagnosed(screening);
    CHECK(n == 107664);  // = 263590 * 0.29/0.71, rounded
    CHECK(std::abs(static_cast<double>(n) - 108427.0) / 108427.0 < 0.01);
  }

  SUBCASE("full attendance leaves nobody undetected") {
    auto s = screening;
    s.attendance_rate = 1.0;
    CHECK(estimate_undiagnosed(s) == 0);
  }

  SUBCASE("zero positivity finds nobody") {
    auto s = screening;
    s.positivity_rate = 0.0;
    CHECK(estimate_undiagnosed(s) == 0);
  }

  SUBCASE("zero attendance is a domain error") {
    auto s = screening;
    s.attendance_rate = 0.0;
    CHECK_THROWS_AS(estimate_undiagnosed(s), std::domain_error);
  }
}

TEST_CASE("diagnosis_rate") {
  CHECK(diagnosis_rate(10, 10, 80) == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(diagnosis_rate(123, 0, 0) == 1.0);
  CHECK_THROWS_AS(diagnosis_rate(0, 0, 0), std::domain_error);
  CHECK_THROWS_AS(diagnosis_rate(-1, 2, 3), std::domain_error);
}

TEST_CASE("lockdown DFS inputs sit within 0.002 of the documented 19% reduction") {
  const auto p = testing::default_params();
  for (int s = 0; s < kNumStages; ++s)
    CHECK(std::abs(p.dfs5.lockdown[s] - 0.81 * p.dfs5.normal[s]) <= 0.002);
}

TEST_CASE("calibrate_healing fills every stage and scenario") {
  auto p = testing::default_params();
  CHECK(!p.healing_calibrated());
  calibration::calibrate_healing(p);
  CHECK(p.healing_calibrated());
  for (int s = 0; s < kNumStages; ++s) {
    CHECK(p.healing_lambda.normal[s] >= 0.0);
    CHECK(p.healing_lambda.lockdown[s] >= 0.0);
    // weaker lockdown DFS targets fit smaller exponents
    CHECK(p.healing_lambda.lockdown[s] < p.healing_lambda.normal[s]);
  }
}
