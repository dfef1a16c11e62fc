#pragma once

#include <vector>

#include "bcsim/calibration.hpp"
#include "bcsim/engine.hpp"
#include "bcsim/model.hpp"

namespace bcsim::testing {

// Transition parameters matching the shipped default configuration, with a
// flat 1% annual background-mortality table (ages 25..109).
inline TransitionParams default_params() {
  TransitionParams p;
  p.incidence_by_decade = {{20, 0.000002}, {30, 0.00001},  {40, 0.000029}, {50, 0.000046},
                           {60, 0.000067}, {70, 0.000079}, {80, 0.000058}};
  p.life_table = LifeTable(25, std::vector<double>(85, 0.01));
  p.progression_k = 0.0009;
  p.progression_lambda_diagnosed = {10, 15, 20, 25};
  p.progression_lambda_undiagnosed = {20, 25, 30, 35};
  p.healing_k = 1.0 / 3.0;
  p.dfs5.normal = {0.987, 0.873, 0.52, 0.037};
  p.dfs5.lockdown = {0.801, 0.708, 0.422, 0.03};
  p.death_lambda_diagnosed.normal = {0.0061, 0.0302, 0.1642, 0.2939};
  p.death_lambda_diagnosed.lockdown = {0.0056, 0.0344, 0.1903, 0.3715};
  p.death_lambda_undiagnosed = {0.0061, 0.0349, 0.1989, 0.3932};
  p.annual_diagnosis_prob.normal = 0.124;
  p.annual_diagnosis_prob.lockdown = 0.116;
  return p;
}

inline TransitionParams calibrated_params() {
  TransitionParams p = default_params();
  calibration::calibrate_healing(p);
  return p;
}

inline CostParams default_costs() {
  CostParams c;
  c.direct_yearly_per_stage = {1881, 3185, 5573, 7869};
  c.indirect_death = 123564;
  c.indirect_other_yearly = 13159;
  return c;
}

// Parameters under which nobody ever changes state: no incidence, no
// mortality, no progression, no healing, no diagnosis.
inline TransitionParams inert_params() {
  TransitionParams p;
  p.incidence_by_decade = {{20, 0.0}};
  p.life_table = LifeTable(25, std::vector<double>(85, 0.0));
  p.progression_k = 0.0;
  p.progression_lambda_diagnosed = {1, 1, 1, 1};
  p.progression_lambda_undiagnosed = {1, 1, 1, 1};
  p.healing_k = 1.0 / 3.0;
  p.dfs5.normal = {0, 0, 0, 0};
  p.dfs5.lockdown = {0, 0, 0, 0};
  p.healing_lambda.normal = {0, 0, 0, 0};
  p.healing_lambda.lockdown = {0, 0, 0, 0};
  p.death_lambda_diagnosed.normal = {0, 0, 0, 0};
  p.death_lambda_diagnosed.lockdown = {0, 0, 0, 0};
  p.death_lambda_undiagnosed = {0, 0, 0, 0};
  p.annual_diagnosis_prob.normal = 0.0;
  p.annual_diagnosis_prob.lockdown = 0.0;
  return p;
}

inline SimulationConfig small_config(int replications = 1, double fraction = 1.0) {
  SimulationConfig cfg;
  cfg.replications = replications;
  cfg.population_fraction = fraction;
  cfg.scale_factor = 1.0 / fraction;
  cfg.base_seed = 9001;
  return cfg;
}

}  // namespace bcsim::testing
