#include <doctest.h>

#include <map>

#include "bcsim/errors.hpp"
#include "bcsim/population.hpp"
#include "fixtures.hpp"

using namespace bcsim;

namespace {

AgeBandTable two_band_table() {
  AgeBandTable t;
  t.bands = {{25, 29, 1000}, {30, 34, 505}};
  return t;
}

InitialDiseaseTable two_band_disease() {
  InitialDiseaseTable d;
  d.rows.resize(2);
  d.rows[0].diagnosed = {100, 40, 20, 10};
  d.rows[0].undiagnosed = {100, 30, 10, 5};
  d.rows[1].diagnosed = {51, 0, 0, 0};
  d.rows[1].undiagnosed = {51, 0, 0, 0};
  return d;
}

}  // namespace

TEST_CASE("cohort construction scales cells round-half-up") {
  const auto ages = two_band_table();
  const auto disease = two_band_disease();
  rng::SplitMix64 rng(5);
  const auto cohort = build_initial_cohort(ages, disease, 0.1, rng);

  // band 0: 100 persons; band 1: round(50.5) = 51
  CHECK(cohort.size() == 151);

  std::map<HealthState, int> by_state;
  for (const auto& p : cohort) ++by_state[p.state];
  CHECK(by_state[HealthState::DiagnosedStage1] == 10 + 5);  // 100*0.1, round(5.1)
  CHECK(by_state[HealthState::DiagnosedStage2] == 4);
  CHECK(by_state[HealthState::DiagnosedStage3] == 2);
  CHECK(by_state[HealthState::DiagnosedStage4] == 1);
  CHECK(by_state[HealthState::UndiagnosedStage1] == 10 + 5);
  CHECK(by_state[HealthState::UndiagnosedStage2] == 3);
  CHECK(by_state[HealthState::UndiagnosedStage3] == 1);
  CHECK(by_state[HealthState::UndiagnosedStage4] == 1);  // round(0.5) = 1

  for (const auto& p : cohort) {
    CHECK(p.cycles_in_state == 0);
    CHECK(p.age >= 25);
    CHECK(p.age <= 34);
  }
}

TEST_CASE("fraction 1.0 reproduces the tables exactly") {
  const auto ages = two_band_table();
  const auto disease = two_band_disease();
  rng::SplitMix64 rng(6);
  const auto cohort = build_initial_cohort(ages, disease, 1.0, rng);
  CHECK(cohort.size() == 1505);
  int d1 = 0;
  for (const auto& p : cohort)
    if (p.state == HealthState::DiagnosedStage1) ++d1;
  CHECK(d1 == 151);
}

TEST_CASE("identical seeds build identical cohorts") {
  const auto ages = two_band_table();
  const auto disease = two_band_disease();
  rng::SplitMix64 a(77), b(77), c(78);
  const auto ca = build_initial_cohort(ages, disease, 0.5, a);
  const auto cb = build_initial_cohort(ages, disease, 0.5, b);
  const auto cc = build_initial_cohort(ages, disease, 0.5, c);
  REQUIRE(ca.size() == cb.size());
  bool identical = true;
  for (std::size_t i = 0; i < ca.size(); ++i)
    identical = identical && ca[i].age == cb[i].age && ca[i].state == cb[i].state;
  CHECK(identical);
  // same size regardless of seed; ages differ
  CHECK(cc.size() == ca.size());
  bool any_diff = false;
  for (std::size_t i = 0; i < ca.size(); ++i) any_diff = any_diff || ca[i].age != cc[i].age;
  CHECK(any_diff);
}

TEST_CASE("disease cells exceeding the band population are rejected") {
  AgeBandTable ages;
  ages.bands = {{25, 29, 100}};
  InitialDiseaseTable disease;
  disease.rows.resize(1);
  disease.rows[0].diagnosed = {60, 50, 0, 0};
  disease.rows[0].undiagnosed = {60, 0, 0, 0};
  rng::SplitMix64 rng(1);
  CHECK_THROWS_AS(build_initial_cohort(ages, disease, 1.0, rng), ConfigError);
}

TEST_CASE("undiagnosed stage-1 must mirror diagnosed stage-1") {
  auto ages = two_band_table();
  auto disease = two_band_disease();
  disease.rows[0].undiagnosed[0] = 99;
  CHECK_THROWS_WITH_AS(disease.validate_against(ages), doctest::Contains("stage-1"),
                       ConfigError);
}

TEST_CASE("shipped tables: 1% sample size and per-cell counts") {
  const auto ages = AgeBandTable::load_csv(std::string(BCSIM_DATA_DIR) + "/age_distribution_2019.csv");
  const auto disease =
      InitialDiseaseTable::load_csv(std::string(BCSIM_DATA_DIR) + "/disease_distribution_2019.csv");
  CHECK(ages.total() == 15079475);

  rng::SplitMix64 rng(42);
  const auto cohort = build_initial_cohort(ages, disease, 0.01, rng);
  // sum of round(count * 0.01) over the 13 bands
  CHECK(cohort.size() == 150795);

  // band 25-29, diagnosed stage 1: round(461 * 0.01) = 5
  int d1_young = 0;
  for (const auto& p : cohort)
    if (p.state == HealthState::DiagnosedStage1 && p.age <= 29) ++d1_young;
  CHECK(d1_young == 5);

  // oldest band samples ages 85..99
  int oldest = 0;
  for (const auto& p : cohort) {
    CHECK(p.age >= 25);
    CHECK(p.age <= 99);
    if (p.age >= 85) ++oldest;
  }
  CHECK(oldest == 5835);
}

TEST_CASE("advance_ages") {
  std::vector<Person> cohort(3);
  cohort[0] = {40, 5, HealthState::Healthy};
  cohort[1] = {50, 2, HealthState::DiagnosedStage2};
  cohort[2] = {60, 0, HealthState::Deceased};

  advance_ages(cohort, 51);
  CHECK(cohort[0].age == 40);

  advance_ages(cohort, 52);
  CHECK(cohort[0].age == 41);
  CHECK(cohort[1].age == 51);
  CHECK(cohort[2].age == 60);  // deceased frozen

  advance_ages(cohort, 0);
  CHECK(cohort[0].age == 41);

  advance_ages(cohort, 104);
  CHECK(cohort[0].age == 42);
}
