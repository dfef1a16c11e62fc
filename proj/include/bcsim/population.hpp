#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bcsim/health_state.hpp"
#include "bcsim/rng.hpp"

namespace bcsim {

// One simulated woman.
struct Person {
  std::int32_t age = 0;
  std::int32_t cycles_in_state = 0;
  HealthState state = HealthState::Healthy;
};

struct AgeBand {
  int low = 0;
  int high = 0;  // inclusive; the open-ended top band uses its sampling cap
  std::int64_t count = 0;
};

// Female population counts per five-year age band (25-29 .. 80-84, 85+).
struct AgeBandTable {
  std::vector<AgeBand> bands;

  static AgeBandTable load_csv(const std::string& path);
  std::int64_t total() const;
  void validate() const;  // disjoint, contiguous from 25, nonnegative counts
};

// Initial diseased counts per (band, stage, diagnosis status), matching the
// age table band-for-band.
struct InitialDiseaseTable {
  struct Row {
    std::array<std::int64_t, kNumStages> diagnosed{};
    std::array<std::int64_t, kNumStages> undiagnosed{};
  };
  std::vector<Row> rows;

  static InitialDiseaseTable load_csv(const std::string& path);
  void validate_against(const AgeBandTable& ages) const;
};

// Builds the simulated cohort: per band, round(count * fraction) persons, of
// which round-half-up scaled disease-table cells start in their cancer state
// (diagnosed stages first, then undiagnosed) and the remainder healthy. Ages
// are drawn uniformly within the band. cycles_in_state starts at 0.
std::vector<Person> build_initial_cohort(const AgeBandTable& ages,
                                         const InitialDiseaseTable& disease,
                                         double fraction, rng::SplitMix64& rng);

// Every 52nd cycle each living person becomes one year older; deceased
// persons stay frozen.
void advance_ages(std::vector<Person>& cohort, int cycle_index);

}  // namespace bcsim
