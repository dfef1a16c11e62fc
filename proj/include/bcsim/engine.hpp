#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcsim/model.hpp"
#include "bcsim/population.hpp"

namespace bcsim {

// Per-patient cost inputs, PLN.
struct CostParams {
  StageArray direct_yearly_per_stage{};  // per diagnosed patient, by stage
  double indirect_death = 0.0;           // one-time, on death from a cancer state
  double indirect_other_yearly = 0.0;    // per diagnosed patient

  void validate() const;
};

struct SimulationConfig {
  int total_cycles = 364;
  int cycles_per_year = kCyclesPerYear;
  int start_year = 2019;
  int replications = 100;
  double population_fraction = 0.01;
  double scale_factor = 100.0;
  std::uint64_t base_seed = 42;
  bool common_random_numbers = true;
  int threads = 1;
  double confidence_level = 0.95;

  int years() const { return total_cycles / cycles_per_year; }
  void validate() const;
};

// Per-cycle event and cost series for one replication, in sample units
// (unscaled). Occupancy is recorded after each cycle's transitions.
struct CostLedger {
  std::vector<double> direct_cost;
  std::vector<double> indirect_death_cost;
  std::vector<double> indirect_other_cost;
  std::vector<std::int64_t> cancer_deaths;
  std::vector<std::int64_t> diagnoses;
  std::vector<std::array<std::int32_t, kNumHealthStates>> occupancy;

  explicit CostLedger(int cycles = 0);
  int cycles() const { return static_cast<int>(direct_cost.size()); }
  double total_cost(int cycle) const {
    return direct_cost[cycle] + indirect_death_cost[cycle] + indirect_other_cost[cycle];
  }
};

// Transition probabilities flattened into lookup tables so the per-person
// step is branch-plus-load. Built once from TransitionParams via the
// model-core operations; construction validates that every reachable
// per-state event-segment sum stays below 1 (ModelError otherwise) and that
// the life table covers every age the simulation can reach (ConfigError).
class TransitionTables {
 public:
  TransitionTables(const TransitionParams& params, const CostParams& costs,
                   int total_cycles, int max_age);

  double incidence(int age) const { return incidence_by_age_[static_cast<std::size_t>(age)]; }
  double background(int age) const { return background_by_age_[static_cast<std::size_t>(age)]; }
  double death_undiagnosed(int stage) const { return death_undiag_[stage - 1]; }
  double death_diagnosed(int stage, bool ld) const { return death_diag_[ld][stage - 1]; }
  double diagnosis(bool ld) const { return diagnosis_[ld]; }
  double progression(int stage, bool diagnosed, int t) const {
    return (diagnosed ? prog_diag_ : prog_undiag_)[stage - 1][static_cast<std::size_t>(t)];
  }
  double healing(int stage, bool ld, int t) const {
    return heal_[ld][stage - 1][static_cast<std::size_t>(t)];
  }
  double direct_cost_cycle(int stage) const { return direct_cycle_[stage - 1]; }
  double indirect_other_cycle() const { return indirect_other_cycle_; }
  double indirect_death_cost() const { return indirect_death_; }
  int max_age() const { return max_age_; }

 private:
  std::vector<double> incidence_by_age_;
  std::vector<double> background_by_age_;
  StageArray death_undiag_{};
  std::array<StageArray, 2> death_diag_{};
  std::array<double, 2> diagnosis_{};
  std::array<std::vector<double>, kNumStages> prog_diag_;
  std::array<std::vector<double>, kNumStages> prog_undiag_;
  std::array<std::array<std::vector<double>, kNumStages>, 2> heal_;
  StageArray direct_cycle_{};
  double indirect_other_cycle_ = 0.0;
  double indirect_death_ = 0.0;
  int max_age_ = 0;
};

// Ledger contribution of a single person-cycle.
struct CycleDelta {
  double direct = 0.0;
  double indirect_death = 0.0;
  double indirect_other = 0.0;
  int deaths = 0;
  int diagnoses = 0;
};

// Advances one living person by one cycle using a single uniform draw.
// Event segments are laid out in a fixed order: death first, then stage
// progression, then diagnosis (undiagnosed) or healing (diagnosed); healthy
// persons face cancer onset then background mortality. Diagnosed-state
// occupancy costs accrue for the state the person entered the cycle in.
void step_person(Person& person, const TransitionTables& tables, bool lockdown_active,
                 double u, CycleDelta& delta);

// Runs cycles 0..total-1 over a copy of the cohort; deterministic given
// (cohort, seed).
CostLedger run_replication(std::vector<Person> cohort, const TransitionTables& tables,
                           const ScenarioConfig& scenario, const SimulationConfig& config,
                           std::uint64_t seed);

// --- experiment-level aggregation -------------------------------------------

enum class Metric { DirectCost, IndirectDeathCost, IndirectOtherCost, TotalCost, Deaths, Diagnoses };
inline constexpr std::array<Metric, 6> kAllMetrics = {
    Metric::DirectCost,       Metric::IndirectDeathCost, Metric::IndirectOtherCost,
    Metric::TotalCost,        Metric::Deaths,            Metric::Diagnoses};
const char* metric_name(Metric m);

struct YearMetrics {
  double direct = 0.0;
  double indirect_death = 0.0;
  double indirect_other = 0.0;
  double deaths = 0.0;
  double diagnoses = 0.0;

  double total_cost() const { return direct + indirect_death + indirect_other; }
  double get(Metric m) const;
};

// One replication reduced to national-scale yearly metrics.
struct ReplicationSummary {
  std::vector<YearMetrics> years;
};

ReplicationSummary summarize(const CostLedger& ledger, const SimulationConfig& config);

struct ScenarioResult {
  std::vector<ReplicationSummary> replications;
  std::vector<std::uint64_t> seeds;

  // column of per-replication values
  std::vector<double> year_samples(Metric m, int year_index) const;
  std::vector<double> total_samples(Metric m) const;
};

struct ExperimentResult {
  std::optional<ScenarioResult> nocovid;
  std::optional<ScenarioResult> covid;
};

enum class ScenarioSelection { NoCovid, Covid, Both };

// Runs the requested scenarios over `replications` cohort copies. With
// common random numbers, replication i uses seed base_seed + i in both
// scenarios; otherwise the covid scenario uses the disjoint range
// base_seed + replications + i. Replications are distributed across
// `config.threads` workers and collected by replication index, so results
// are independent of scheduling order.
ExperimentResult run_experiment(const std::vector<Person>& cohort_template,
                                const TransitionTables& tables, const ScenarioConfig& lockdown,
                                const SimulationConfig& config, ScenarioSelection selection);

}  // namespace bcsim
