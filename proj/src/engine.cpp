#include "bcsim/engine.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "bcsim/errors.hpp"
#include "bcsim/rng.hpp"

namespace bcsim {

void CostParams::validate() const {
  for (int s = 0; s < kNumStages; ++s)
    if (!(direct_yearly_per_stage[s] > 0.0))
      throw ConfigError("direct_cost_yearly_per_stage[" + std::to_string(s + 1) +
                        "] must be positive");
  if (!(indirect_death > 0.0)) throw ConfigError("indirect_death_cost must be positive");
  if (!(indirect_other_yearly > 0.0))
    throw ConfigError("indirect_other_cost_yearly must be positive");
}

void SimulationConfig::validate() const {
  if (cycles_per_year != kCyclesPerYear)
    throw ConfigError("cycles_per_year must be " + std::to_string(kCyclesPerYear));
  if (total_cycles <= 0 || total_cycles % cycles_per_year != 0)
    throw ConfigError("total_cycles must be a positive multiple of cycles_per_year");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (!(population_fraction > 0.0 && population_fraction <= 1.0))
    throw ConfigError("population_fraction must lie in (0,1]");
  const double expected_scale = 1.0 / population_fraction;
  if (std::abs(scale_factor - expected_scale) > 1e-6 * expected_scale)
    throw ConfigError("scale_factor must equal 1/population_fraction");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (!(confidence_level > 0.0 && confidence_level < 1.0))
    throw ConfigError("confidence_level out of (0,1)");
}

CostLedger::CostLedger(int cycles)
    : direct_cost(cycles, 0.0),
      indirect_death_cost(cycles, 0.0),
      indirect_other_cost(cycles, 0.0),
      cancer_deaths(cycles, 0),
      diagnoses(cycles, 0),
      occupancy(cycles) {
  for (auto& occ : occupancy) occ.fill(0);
}

TransitionTables::TransitionTables(const TransitionParams& params, const CostParams& costs,
                                   int total_cycles, int max_age)
    : max_age_(max_age) {
  params.validate();
  costs.validate();
  if (!params.healing_calibrated())
    throw ConfigError("healing lambdas are not calibrated");
  if (!params.life_table.covers(max_age))
    throw ConfigError("life table ends at age " + std::to_string(params.life_table.last_age()) +
                      " but the simulation can reach age " + std::to_string(max_age));

  incidence_by_age_.assign(static_cast<std::size_t>(max_age) + 1, 0.0);
  background_by_age_.assign(static_cast<std::size_t>(max_age) + 1, 0.0);
  for (int age = 25; age <= max_age; ++age) {
    incidence_by_age_[static_cast<std::size_t>(age)] = incidence_probability(age, params);
    background_by_age_[static_cast<std::size_t>(age)] =
        background_mortality_probability(age, params.life_table);
  }

  const auto t_size = static_cast<std::size_t>(total_cycles) + 1;
  for (int s = 1; s <= kNumStages; ++s) {
    prog_diag_[s - 1].assign(t_size, 0.0);
    prog_undiag_[s - 1].assign(t_size, 0.0);
    heal_[0][s - 1].assign(t_size, 0.0);
    heal_[1][s - 1].assign(t_size, 0.0);
    for (std::size_t t = 0; t < t_size; ++t) {
      const int ti = static_cast<int>(t);
      if (s < kNumStages) {
        prog_diag_[s - 1][t] = progression_probability(s, true, ti, params);
        prog_undiag_[s - 1][t] = progression_probability(s, false, ti, params);
      }
      heal_[0][s - 1][t] = healing_probability(s, false, ti, params);
      heal_[1][s - 1][t] = healing_probability(s, true, ti, params);
    }
    death_undiag_[s - 1] = cancer_death_probability(s, false, false, params);
    death_diag_[0][s - 1] = cancer_death_probability(s, true, false, params);
    death_diag_[1][s - 1] = cancer_death_probability(s, true, true, params);
    direct_cycle_[s - 1] = costs.direct_yearly_per_stage[s - 1] / kCyclesPerYear;
  }
  diagnosis_[0] = diagnosis_probability(false, params);
  diagnosis_[1] = diagnosis_probability(true, params);
  indirect_other_cycle_ = costs.indirect_other_yearly / kCyclesPerYear;
  indirect_death_ = costs.indirect_death;

  // Exhaustive segment-sum check over every state the step function can
  // see: the single-draw partition of [0,1) needs slack for the stay
  // segment.
  for (int age = 25; age <= max_age; ++age) {
    if (incidence(age) + background(age) >= 1.0)
      throw ModelError("healthy-state event probabilities sum above 1 at age " +
                       std::to_string(age));
  }
  for (int s = 1; s <= kNumStages; ++s) {
    for (int ld = 0; ld < 2; ++ld) {
      for (std::size_t t = 0; t < t_size; ++t) {
        const int ti = static_cast<int>(t);
        const double undiag = death_undiagnosed(s) +
                              (s < kNumStages ? progression(s, false, ti) : 0.0) +
                              diagnosis(ld != 0);
        const double diag = death_diagnosed(s, ld != 0) +
                            (s < kNumStages ? progression(s, true, ti) : 0.0) +
                            healing(s, ld != 0, ti);
        if (undiag >= 1.0 || diag >= 1.0)
          throw ModelError("stage " + std::to_string(s) +
                           " event probabilities sum above 1 (t=" + std::to_string(t) + ")");
      }
    }
  }
}

void step_person(Person& person, const TransitionTables& tables, bool lockdown_active,
                 double u, CycleDelta& delta) {
  const HealthState state = person.state;
  const int t = person.cycles_in_state;

  if (state == HealthState::Healthy) {
    const double p_onset = tables.incidence(person.age);
    const double p_bg = tables.background(person.age);
    if (u < p_onset) {
      person.state = HealthState::UndiagnosedStage1;
      person.cycles_in_state = 0;
    } else if (u < p_onset + p_bg) {
      // non-cancer death: no indirect-death cost, not a cancer death
      person.state = HealthState::Deceased;
      person.cycles_in_state = 0;
    } else {
      ++person.cycles_in_state;
    }
    return;
  }

  if (is_undiagnosed(state)) {
    const int stage = stage_of(state);
    const double p_death = tables.death_undiagnosed(stage);
    const double p_prog = stage < kNumStages ? tables.progression(stage, false, t) : 0.0;
    const double p_diag = tables.diagnosis(lockdown_active);
    if (u < p_death) {
      person.state = HealthState::Deceased;
      person.cycles_in_state = 0;
      delta.indirect_death += tables.indirect_death_cost();
      ++delta.deaths;
    } else if (u < p_death + p_prog) {
      person.state = undiagnosed_stage(stage + 1);
      person.cycles_in_state = 0;
    } else if (u < p_death + p_prog + p_diag) {
      person.state = diagnosed_stage(stage);
      person.cycles_in_state = 0;
      ++delta.diagnoses;
    } else {
      ++person.cycles_in_state;
    }
    return;
  }

  if (is_diagnosed(state)) {
    const int stage = stage_of(state);
    // occupancy costs for the cycle being lived in this state
    delta.direct += tables.direct_cost_cycle(stage);
    delta.indirect_other += tables.indirect_other_cycle();
    const double p_death = tables.death_diagnosed(stage, lockdown_active);
    const double p_prog = stage < kNumStages ? tables.progression(stage, true, t) : 0.0;
    const double p_heal = tables.healing(stage, lockdown_active, t);
    if (u < p_death) {
      person.state = HealthState::Deceased;
      person.cycles_in_state = 0;
      delta.indirect_death += tables.indirect_death_cost();
      ++delta.deaths;
    } else if (u < p_death + p_prog) {
      person.state = diagnosed_stage(stage + 1);
      person.cycles_in_state = 0;
    } else if (u < p_death + p_prog + p_heal) {
      person.state = HealthState::Healthy;
      person.cycles_in_state = 0;
    } else {
      ++person.cycles_in_state;
    }
    return;
  }

  throw ModelError("step_person called on a deceased person");
}

CostLedger run_replication(std::vector<Person> cohort, const TransitionTables& tables,
                           const ScenarioConfig& scenario, const SimulationConfig& config,
                           std::uint64_t seed) {
  CostLedger ledger(config.total_cycles);
  for (int cycle = 0; cycle < config.total_cycles; ++cycle) {
    advance_ages(cohort, cycle);
    const bool lockdown = scenario.lockdown_active(cycle);

    CycleDelta delta;
    for (std::size_t i = 0; i < cohort.size(); ++i) {
      Person& p = cohort[i];
      if (!is_alive(p.state)) continue;
      const double u = rng::person_cycle_uniform(seed, i, static_cast<std::uint64_t>(cycle));
      step_person(p, tables, lockdown, u, delta);
    }

    ledger.direct_cost[cycle] = delta.direct;
    ledger.indirect_death_cost[cycle] = delta.indirect_death;
    ledger.indirect_other_cost[cycle] = delta.indirect_other;
    ledger.cancer_deaths[cycle] = delta.deaths;
    ledger.diagnoses[cycle] = delta.diagnoses;
    auto& occ = ledger.occupancy[cycle];
    for (const Person& p : cohort) ++occ[static_cast<std::size_t>(p.state)];
  }
  return ledger;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::DirectCost: return "direct_cost";
    case Metric::IndirectDeathCost: return "indirect_death_cost";
    case Metric::IndirectOtherCost: return "indirect_other_cost";
    case Metric::TotalCost: return "total_cost";
    case Metric::Deaths: return "deaths";
    case Metric::Diagnoses: return "diagnoses";
  }
  return "?";
}

double YearMetrics::get(Metric m) const {
  switch (m) {
    case Metric::DirectCost: return direct;
    case Metric::IndirectDeathCost: return indirect_death;
    case Metric::IndirectOtherCost: return indirect_other;
    case Metric::TotalCost: return total_cost();
    case Metric::Deaths: return deaths;
    case Metric::Diagnoses: return diagnoses;
  }
  return 0.0;
}

ReplicationSummary summarize(const CostLedger& ledger, const SimulationConfig& config) {
  ReplicationSummary summary;
  summary.years.resize(static_cast<std::size_t>(config.years()));
  for (int cycle = 0; cycle < ledger.cycles(); ++cycle) {
    YearMetrics& y = summary.years[static_cast<std::size_t>(cycle / config.cycles_per_year)];
    y.direct += ledger.direct_cost[cycle];
    y.indirect_death += ledger.indirect_death_cost[cycle];
    y.indirect_other += ledger.indirect_other_cost[cycle];
    y.deaths += static_cast<double>(ledger.cancer_deaths[cycle]);
    y.diagnoses += static_cast<double>(ledger.diagnoses[cycle]);
  }
  for (YearMetrics& y : summary.years) {
    y.direct *= config.scale_factor;
    y.indirect_death *= config.scale_factor;
    y.indirect_other *= config.scale_factor;
    y.deaths *= config.scale_factor;
    y.diagnoses *= config.scale_factor;
  }
  return summary;
}

std::vector<double> ScenarioResult::year_samples(Metric m, int year_index) const {
  std::vector<double> out;
  out.reserve(replications.size());
  for (const auto& rep : replications)
    out.push_back(rep.years[static_cast<std::size_t>(year_index)].get(m));
  return out;
}

std::vector<double> ScenarioResult::total_samples(Metric m) const {
  std::vector<double> out;
  out.reserve(replications.size());
  for (const auto& rep : replications) {
    double total = 0.0;
    for (const auto& y : rep.years) total += y.get(m);
    out.push_back(total);
  }
  return out;
}

namespace {

struct Job {
  bool covid;
  int replication;
  std::uint64_t seed;
};

}  // namespace

ExperimentResult run_experiment(const std::vector<Person>& cohort_template,
                                const TransitionTables& tables, const ScenarioConfig& lockdown,
                                const SimulationConfig& config, ScenarioSelection selection) {
  config.validate();

  const bool want_nocovid = selection != ScenarioSelection::Covid;
  const bool want_covid = selection != ScenarioSelection::NoCovid;
  const auto reps = static_cast<std::uint64_t>(config.replications);

  ExperimentResult result;
  std::vector<Job> jobs;
  std::vector<ReplicationSummary>* outputs[2] = {nullptr, nullptr};
  if (want_nocovid) {
    result.nocovid.emplace();
    result.nocovid->replications.resize(reps);
    outputs[0] = &result.nocovid->replications;
  }
  if (want_covid) {
    result.covid.emplace();
    result.covid->replications.resize(reps);
    outputs[1] = &result.covid->replications;
  }

  for (int i = 0; i < config.replications; ++i) {
    const auto base = config.base_seed + static_cast<std::uint64_t>(i);
    const std::uint64_t nocovid_seed = base;
    const std::uint64_t covid_seed = config.common_random_numbers ? base : base + reps;
    if (want_nocovid) {
      jobs.push_back({false, i, nocovid_seed});
      result.nocovid->seeds.push_back(nocovid_seed);
    }
    if (want_covid) {
      jobs.push_back({true, i, covid_seed});
      result.covid->seeds.push_back(covid_seed);
    }
  }

  ScenarioConfig nocovid_scenario = lockdown;
  nocovid_scenario.covid_enabled = false;
  ScenarioConfig covid_scenario = lockdown;
  covid_scenario.covid_enabled = true;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    try {
      for (;;) {
        const std::size_t j = next.fetch_add(1);
        if (j >= jobs.size()) return;
        const Job& job = jobs[j];
        const ScenarioConfig& scen = job.covid ? covid_scenario : nocovid_scenario;
        CostLedger ledger = run_replication(cohort_template, tables, scen, config, job.seed);
        (*outputs[job.covid ? 1 : 0])[static_cast<std::size_t>(job.replication)] =
            summarize(ledger, config);
      }
    } catch (...) {
      std::scoped_lock lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const int n_threads = std::min<int>(config.threads, static_cast<int>(jobs.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace bcsim
