#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bcsim/calibration.hpp"
#include "bcsim/engine.hpp"
#include "bcsim/model.hpp"
#include "bcsim/population.hpp"

namespace bcsim {

// Flat key/value configuration file: one `key = value` per line, `#` starts
// a comment. Values are scalars, comma-separated lists, or comma-separated
// `key:value` pairs. Every lookup failure names the file, line and field.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key);
  double get_double(const std::string& key);
  std::int64_t get_int(const std::string& key);
  bool get_bool(const std::string& key);
  StageArray get_stage_array(const std::string& key);
  std::vector<std::pair<int, double>> get_pairs_double(const std::string& key);
  std::vector<std::pair<int, std::int64_t>> get_pairs_int(const std::string& key);

  // "path:line (key)" for error messages
  std::string where(const std::string& key) const;
  // all entries in file order, for the run manifest
  const std::vector<std::pair<std::string, std::string>>& snapshot() const { return order_; }
  const std::string& path() const { return path_; }
  // throws if any key was never consumed (catches typos)
  void reject_unknown_keys() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };

  const Entry& entry(const std::string& key);

  std::string path_;
  std::map<std::string, Entry> entries_;
  std::vector<std::pair<std::string, std::string>> order_;
};

struct CalibrationInputs {
  calibration::PrevalenceSeries prevalence;
  calibration::ScreeningStats screening;
};

// Everything a run needs, fully validated and calibrated.
struct LoadedInputs {
  SimulationConfig sim;
  ScenarioConfig lockdown;
  TransitionParams params;
  CostParams costs;
  AgeBandTable ages;
  InitialDiseaseTable disease;
  CalibrationInputs calibration;
  std::vector<std::pair<std::string, std::string>> snapshot;
};

// Parses the configuration and its referenced CSV tables, validates every
// invariant, then runs the startup calibration and freezes its outputs into
// the returned TransitionParams.
LoadedInputs load_config(const std::string& path);

// Calibrated parameter set as CSV (`--dump-params`).
std::string dump_params_csv(const LoadedInputs& inputs);

}  // namespace bcsim
