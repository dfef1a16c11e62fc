#include "bcsim/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bcsim/errors.hpp"

namespace bcsim {

namespace {

void require_stage(int stage) {
  if (stage < 1 || stage > kNumStages) throw std::domain_error("stage out of 1..4");
}

void check_probability(double v, const std::string& field) {
  if (!(v >= 0.0 && v <= 1.0))
    throw ConfigError(field + " = " + std::to_string(v) + " out of [0,1]");
}

void check_rate(double v, const std::string& field) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw ConfigError(field + " = " + std::to_string(v) + " must be >= 0");
}

}  // namespace

bool TransitionParams::healing_calibrated() const {
  for (double v : healing_lambda.normal)
    if (v < 0) return false;
  for (double v : healing_lambda.lockdown)
    if (v < 0) return false;
  return true;
}

void TransitionParams::validate() const {
  if (incidence_by_decade.empty()) throw ConfigError("incidence_by_decade is empty");
  for (const auto& [decade, p] : incidence_by_decade)
    check_probability(p, "incidence_by_decade[" + std::to_string(decade) + "]");
  if (life_table.empty()) throw ConfigError("life table is empty");
  check_probability(progression_k, "progression_k");
  check_probability(healing_k, "healing_k");
  for (int s = 0; s < kNumStages; ++s) {
    const std::string suffix = "[" + std::to_string(s + 1) + "]";
    check_rate(progression_lambda_diagnosed[s], "progression_lambda_diagnosed" + suffix);
    check_rate(progression_lambda_undiagnosed[s], "progression_lambda_undiagnosed" + suffix);
    check_rate(death_lambda_diagnosed.normal[s], "death_lambda_diagnosed_normal" + suffix);
    check_rate(death_lambda_diagnosed.lockdown[s], "death_lambda_diagnosed_lockdown" + suffix);
    check_rate(death_lambda_undiagnosed[s], "death_lambda_undiagnosed" + suffix);
    if (!(dfs5.normal[s] >= 0.0 && dfs5.normal[s] < 1.0))
      throw ConfigError("dfs5_normal" + suffix + " out of [0,1)");
    if (!(dfs5.lockdown[s] >= 0.0 && dfs5.lockdown[s] < 1.0))
      throw ConfigError("dfs5_lockdown" + suffix + " out of [0,1)");
  }
  check_probability(annual_diagnosis_prob.normal, "annual_diagnosis_prob_normal");
  check_probability(annual_diagnosis_prob.lockdown, "annual_diagnosis_prob_lockdown");
}

double incidence_probability(int age, const TransitionParams& params) {
  if (age < 25) throw std::domain_error("incidence is modeled for ages 25+ only");
  auto it = params.incidence_by_decade.upper_bound(age);
  if (it == params.incidence_by_decade.begin())
    throw std::domain_error("age below the first incidence band");
  return std::prev(it)->second;
}

double background_mortality_probability(int age, const LifeTable& life_table) {
  if (age < 25) throw std::domain_error("background mortality is modeled for ages 25+ only");
  return annual_to_cycle_probability(life_table.annual_q(age));
}

double progression_probability(int stage, bool diagnosed, int t_in_state,
                               const TransitionParams& params) {
  require_stage(stage);
  if (stage == kNumStages) throw std::domain_error("stage 4 has no successor state");
  if (t_in_state < 0) throw std::domain_error("t_in_state must be >= 0");
  const StageArray& lambdas = diagnosed ? params.progression_lambda_diagnosed
                                        : params.progression_lambda_undiagnosed;
  return params.progression_k * -std::expm1(-lambdas[stage - 1] * t_in_state);
}

double diagnosis_probability(bool lockdown_active, const TransitionParams& params) {
  return annual_to_cycle_probability(params.annual_diagnosis_prob.select(lockdown_active));
}

double healing_probability(int stage, bool lockdown_active, int t_in_state,
                           const TransitionParams& params) {
  require_stage(stage);
  if (t_in_state < 0) throw std::domain_error("t_in_state must be >= 0");
  const double lambda = params.healing_lambda.select(lockdown_active)[stage - 1];
  if (lambda < 0)
    throw ConfigError("healing lambda for stage " + std::to_string(stage) +
                      " has not been calibrated");
  return params.healing_k * -std::expm1(-lambda * t_in_state);
}

double cancer_death_probability(int stage, bool diagnosed, bool lockdown_active,
                                const TransitionParams& params) {
  require_stage(stage);
  const double lambda = diagnosed
                            ? params.death_lambda_diagnosed.select(lockdown_active)[stage - 1]
                            : params.death_lambda_undiagnosed[stage - 1];
  return rate_to_probability(HazardRate(lambda, RateUnit::PerYear).per_cycle(), 1.0);
}

}  // namespace bcsim
