#include "bcsim/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bcsim/csv.hpp"
#include "bcsim/errors.hpp"

namespace bcsim {

namespace fs = std::filesystem;

ConfigFile ConfigFile::parse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ConfigFile cfg;
  cfg.path_ = path;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = csv::trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": expected 'key = value'");
    const std::string key = csv::trim(text.substr(0, eq));
    const std::string value = csv::trim(text.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(line_number) + ": empty key");
    if (cfg.entries_.count(key))
      throw ConfigError(path + ":" + std::to_string(line_number) + ": duplicate key '" +
                        key + "' (first defined on line " +
                        std::to_string(cfg.entries_[key].line) + ")");
    cfg.entries_[key] = Entry{value, line_number, false};
    cfg.order_.emplace_back(key, value);
  }
  return cfg;
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw ConfigError(path_ + ": missing required key '" + key + "'");
  it->second.used = true;
  return it->second;
}

bool ConfigFile::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string ConfigFile::where(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return path_ + " (" + key + ")";
  return path_ + ":" + std::to_string(it->second.line) + " (" + key + ")";
}

std::string ConfigFile::get_string(const std::string& key) { return entry(key).value; }

double ConfigFile::get_double(const std::string& key) {
  return csv::parse_double(entry(key).value, where(key));
}

std::int64_t ConfigFile::get_int(const std::string& key) {
  return csv::parse_int(entry(key).value, where(key));
}

bool ConfigFile::get_bool(const std::string& key) {
  const std::string& v = entry(key).value;
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(where(key) + ": expected 'true' or 'false', got '" + v + "'");
}

StageArray ConfigFile::get_stage_array(const std::string& key) {
  const auto parts = csv::split(entry(key).value);
  if (parts.size() != kNumStages)
    throw ConfigError(where(key) + ": expected " + std::to_string(kNumStages) +
                      " comma-separated values, got " + std::to_string(parts.size()));
  StageArray out{};
  for (int i = 0; i < kNumStages; ++i) out[i] = csv::parse_double(parts[i], where(key));
  return out;
}

namespace {

std::pair<std::string, std::string> split_pair(const std::string& item,
                                               const std::string& where) {
  const auto colon = item.find(':');
  if (colon == std::string::npos)
    throw ConfigError(where + ": expected 'key:value', got '" + item + "'");
  return {csv::trim(item.substr(0, colon)), csv::trim(item.substr(colon + 1))};
}

}  // namespace

std::vector<std::pair<int, double>> ConfigFile::get_pairs_double(const std::string& key) {
  std::vector<std::pair<int, double>> out;
  for (const auto& item : csv::split(entry(key).value)) {
    auto [k, v] = split_pair(item, where(key));
    out.emplace_back(static_cast<int>(csv::parse_int(k, where(key))),
                     csv::parse_double(v, where(key)));
  }
  return out;
}

std::vector<std::pair<int, std::int64_t>> ConfigFile::get_pairs_int(const std::string& key) {
  std::vector<std::pair<int, std::int64_t>> out;
  for (const auto& item : csv::split(entry(key).value)) {
    auto [k, v] = split_pair(item, where(key));
    out.emplace_back(static_cast<int>(csv::parse_int(k, where(key))),
                     csv::parse_int(v, where(key)));
  }
  return out;
}

void ConfigFile::reject_unknown_keys() const {
  for (const auto& [key, e] : entries_) {
    if (!e.used)
      throw ConfigError(path_ + ":" + std::to_string(e.line) + ": unknown key '" + key + "'");
  }
}

namespace {

std::string resolve(const std::string& config_path, const std::string& file) {
  const fs::path p(file);
  if (p.is_absolute()) return file;
  return (fs::path(config_path).parent_path() / p).string();
}

}  // namespace

LoadedInputs load_config(const std::string& path) {
  ConfigFile cfg = ConfigFile::parse(path);
  LoadedInputs in;

  in.sim.total_cycles = static_cast<int>(cfg.get_int("total_cycles"));
  in.sim.cycles_per_year = static_cast<int>(cfg.get_int("cycles_per_year"));
  in.sim.start_year = static_cast<int>(cfg.get_int("start_year"));
  in.sim.replications = static_cast<int>(cfg.get_int("replications"));
  in.sim.population_fraction = cfg.get_double("population_fraction");
  if (!(in.sim.population_fraction > 0.0))
    throw ConfigError(cfg.where("population_fraction") + ": must be positive");
  in.sim.scale_factor = 1.0 / in.sim.population_fraction;
  in.sim.base_seed = static_cast<std::uint64_t>(cfg.get_int("base_seed"));
  in.sim.common_random_numbers = cfg.get_bool("common_random_numbers");
  in.sim.confidence_level = cfg.get_double("confidence_level");
  if (cfg.has("threads")) in.sim.threads = static_cast<int>(cfg.get_int("threads"));

  in.lockdown.covid_enabled = true;  // selection happens at run time
  in.lockdown.lockdown_start = static_cast<int>(cfg.get_int("lockdown_start_cycle"));
  in.lockdown.lockdown_end = static_cast<int>(cfg.get_int("lockdown_end_cycle"));
  if (!(0 <= in.lockdown.lockdown_start && in.lockdown.lockdown_start < in.lockdown.lockdown_end &&
        in.lockdown.lockdown_end <= in.sim.total_cycles))
    throw ConfigError(cfg.where("lockdown_start_cycle") +
                      ": lockdown window must satisfy 0 <= start < end <= total_cycles");

  for (auto [decade, p] : cfg.get_pairs_double("incidence_per_cycle")) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError(cfg.where("incidence_per_cycle") + ": probability for decade " +
                        std::to_string(decade) + " out of [0,1]");
    in.params.incidence_by_decade[decade] = p;
  }

  in.params.life_table = LifeTable::load_csv(resolve(path, cfg.get_string("life_table")));

  in.params.progression_k = cfg.get_double("progression_k");
  in.params.progression_lambda_diagnosed = cfg.get_stage_array("progression_lambda_diagnosed");
  in.params.progression_lambda_undiagnosed =
      cfg.get_stage_array("progression_lambda_undiagnosed");

  in.params.healing_k = cfg.get_double("healing_k");
  in.params.dfs5.normal = cfg.get_stage_array("dfs5_normal");
  in.params.dfs5.lockdown = cfg.get_stage_array("dfs5_lockdown");

  in.params.death_lambda_diagnosed.normal =
      cfg.get_stage_array("death_lambda_diagnosed_normal");
  in.params.death_lambda_diagnosed.lockdown =
      cfg.get_stage_array("death_lambda_diagnosed_lockdown");
  in.params.death_lambda_undiagnosed = cfg.get_stage_array("death_lambda_undiagnosed");

  in.params.annual_diagnosis_prob.normal = cfg.get_double("annual_diagnosis_prob_normal");
  in.params.annual_diagnosis_prob.lockdown = cfg.get_double("annual_diagnosis_prob_lockdown");

  in.costs.direct_yearly_per_stage = cfg.get_stage_array("direct_cost_yearly_per_stage");
  in.costs.indirect_death = cfg.get_double("indirect_death_cost");
  in.costs.indirect_other_yearly = cfg.get_double("indirect_other_cost_yearly");

  in.ages = AgeBandTable::load_csv(resolve(path, cfg.get_string("age_table")));
  in.disease = InitialDiseaseTable::load_csv(resolve(path, cfg.get_string("disease_table")));

  for (auto [year, count] : cfg.get_pairs_int("prevalence_series")) {
    if (count < 0)
      throw ConfigError(cfg.where("prevalence_series") + ": negative count for year " +
                        std::to_string(year));
    in.calibration.prevalence.points.emplace_back(year, count);
  }
  in.calibration.screening.mammograms_performed = cfg.get_int("screening_mammograms");
  in.calibration.screening.attendance_rate = cfg.get_double("screening_attendance_rate");
  in.calibration.screening.positivity_rate = cfg.get_double("screening_positive_fraction");
  in.calibration.screening.detected_cases = cfg.get_int("screening_detected_cases");

  cfg.reject_unknown_keys();

  try {
    in.sim.validate();
    in.params.validate();
    in.costs.validate();
    in.disease.validate_against(in.ages);
    in.calibration.screening.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }

  // lockdown DFS is documented as the normal DFS reduced by 19%; warn when a
  // config drifts from that relationship
  for (int s = 0; s < kNumStages; ++s) {
    const double expected = 0.81 * in.params.dfs5.normal[s];
    if (std::abs(in.params.dfs5.lockdown[s] - expected) > 0.002)
      std::cerr << "warning: dfs5_lockdown[" << s + 1 << "] = " << in.params.dfs5.lockdown[s]
                << " is not 0.81 * dfs5_normal[" << s + 1 << "] = " << expected << "\n";
  }

  calibration::calibrate_healing(in.params);
  in.snapshot = cfg.snapshot();
  return in;
}

std::string dump_params_csv(const LoadedInputs& in) {
  std::ostringstream out;
  out.precision(17);
  out << "parameter,stage,scenario,value\n";
  auto row = [&out](const std::string& name, const std::string& stage,
                    const std::string& scenario, double value) {
    out << name << ',' << stage << ',' << scenario << ',' << value << '\n';
  };

  for (const auto& [decade, p] : in.params.incidence_by_decade)
    row("incidence_per_cycle", std::to_string(decade), "any", p);
  row("progression_k", "", "any", in.params.progression_k);
  row("healing_k", "", "any", in.params.healing_k);
  for (int s = 0; s < kNumStages; ++s) {
    const std::string stage = std::to_string(s + 1);
    row("progression_lambda_diagnosed", stage, "any", in.params.progression_lambda_diagnosed[s]);
    row("progression_lambda_undiagnosed", stage, "any",
        in.params.progression_lambda_undiagnosed[s]);
    row("dfs5", stage, "normal", in.params.dfs5.normal[s]);
    row("dfs5", stage, "lockdown", in.params.dfs5.lockdown[s]);
    row("healing_lambda", stage, "normal", in.params.healing_lambda.normal[s]);
    row("healing_lambda", stage, "lockdown", in.params.healing_lambda.lockdown[s]);
    row("death_lambda_diagnosed", stage, "normal", in.params.death_lambda_diagnosed.normal[s]);
    row("death_lambda_diagnosed", stage, "lockdown",
        in.params.death_lambda_diagnosed.lockdown[s]);
    row("death_lambda_undiagnosed", stage, "any", in.params.death_lambda_undiagnosed[s]);
    row("death_prob_per_cycle_diagnosed", stage, "normal",
        cancer_death_probability(s + 1, true, false, in.params));
    row("death_prob_per_cycle_diagnosed", stage, "lockdown",
        cancer_death_probability(s + 1, true, true, in.params));
    row("death_prob_per_cycle_undiagnosed", stage, "any",
        cancer_death_probability(s + 1, false, false, in.params));
  }
  row("annual_diagnosis_prob", "", "normal", in.params.annual_diagnosis_prob.normal);
  row("annual_diagnosis_prob", "", "lockdown", in.params.annual_diagnosis_prob.lockdown);
  row("diagnosis_prob_per_cycle", "", "normal", diagnosis_probability(false, in.params));
  row("diagnosis_prob_per_cycle", "", "lockdown", diagnosis_probability(true, in.params));
  for (int s = 0; s < kNumStages; ++s)
    row("direct_cost_yearly", std::to_string(s + 1), "any",
        in.costs.direct_yearly_per_stage[s]);
  row("indirect_death_cost", "", "any", in.costs.indirect_death);
  row("indirect_other_cost_yearly", "", "any", in.costs.indirect_other_yearly);

  const std::vector<int> targets = {in.sim.start_year - 1, in.sim.start_year};
  const auto projected = calibration::project_prevalence(in.calibration.prevalence, targets);
  for (std::size_t i = 0; i < targets.size(); ++i)
    row("projected_prevalence", std::to_string(targets[i]), "any",
        static_cast<double>(projected[i]));
  row("estimated_undiagnosed", "", "any",
      static_cast<double>(calibration::estimate_undiagnosed(in.calibration.screening)));
  return out.str();
}

}  // namespace bcsim
