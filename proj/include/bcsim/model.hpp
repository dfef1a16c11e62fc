#pragma once

#include <array>
#include <map>
#include <string>

#include "bcsim/hazard.hpp"
#include "bcsim/health_state.hpp"
#include "bcsim/life_table.hpp"

namespace bcsim {

// Value pair selected by whether the lockdown modifiers are in force.
template <typename T>
struct PerScenario {
  T normal{};
  T lockdown{};

  const T& select(bool lockdown_active) const { return lockdown_active ? lockdown : normal; }
};

using StageArray = std::array<double, kNumStages>;

// Every calibrated transition input of the disease model. Immutable once
// validated; shared read-only across replication workers.
struct TransitionParams {
  // decade of age -> per-cycle probability of developing breast cancer
  std::map<int, double> incidence_by_decade;

  // annual non-cancer death probability by age
  LifeTable life_table;

  // stage increase: p = k * (1 - e^(-lambda * t)), t = cycles in state
  double progression_k = 0.0;
  StageArray progression_lambda_diagnosed{};
  StageArray progression_lambda_undiagnosed{};

  // healing: p = k * (1 - e^(-lambda * t)); lambda fitted from 5-year DFS
  double healing_k = 0.0;
  PerScenario<StageArray> dfs5;
  PerScenario<StageArray> healing_lambda{{-1, -1, -1, -1}, {-1, -1, -1, -1}};

  // breast cancer mortality, annual rates
  PerScenario<StageArray> death_lambda_diagnosed;
  StageArray death_lambda_undiagnosed{};

  PerScenario<double> annual_diagnosis_prob;

  bool healing_calibrated() const;

  // Checks every range invariant; throws ConfigError with the offending
  // field named.
  void validate() const;
};

// Lockdown switch plus the half-open cycle window where the modified
// parameters apply.
struct ScenarioConfig {
  bool covid_enabled = false;
  int lockdown_start = 0;  // inclusive
  int lockdown_end = 0;    // exclusive

  bool lockdown_active(int cycle) const {
    return covid_enabled && cycle >= lockdown_start && cycle < lockdown_end;
  }
};

// --- per-cycle transition probabilities -------------------------------------

// Greatest tabulated decade at or below `age`; the top band applies to all
// older ages. Ages below 25 are outside the model.
double incidence_probability(int age, const TransitionParams& params);

// Annual life-table probability converted to one cycle.
double background_mortality_probability(int age, const LifeTable& life_table);

// Stage increase within a diagnosis status; stage 4 has no successor.
double progression_probability(int stage, bool diagnosed, int t_in_state,
                               const TransitionParams& params);

double diagnosis_probability(bool lockdown_active, const TransitionParams& params);

double healing_probability(int stage, bool lockdown_active, int t_in_state,
                           const TransitionParams& params);

double cancer_death_probability(int stage, bool diagnosed, bool lockdown_active,
                                const TransitionParams& params);

}  // namespace bcsim
