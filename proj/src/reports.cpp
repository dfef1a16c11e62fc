#include "bcsim/reports.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "bcsim/errors.hpp"
#include "bcsim/stats.hpp"

namespace bcsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kMillion = 1e6;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string full(double v) { return fmt("%.17g", v); }      // raw tier
std::string disp(double v) { return fmt("%.1f", v); }       // display tier

struct PendingFile {
  std::string name;  // relative to out_dir
  std::string content;
};

bool is_cost_metric(Metric m) {
  return m == Metric::DirectCost || m == Metric::IndirectDeathCost ||
         m == Metric::IndirectOtherCost || m == Metric::TotalCost;
}

// display unit: costs in million PLN, events as counts
double display_value(Metric m, double v) { return is_cost_metric(m) ? v / kMillion : v; }

constexpr std::array<Metric, 4> kCostColumns = {Metric::DirectCost, Metric::IndirectDeathCost,
                                                Metric::IndirectOtherCost, Metric::TotalCost};

std::string costs_csv(const ScenarioResult& scen, const SimulationConfig& sim) {
  std::string out = "year";
  for (Metric m : kCostColumns)
    out += std::string(",") + metric_name(m) + "_mpln," + metric_name(m) + "_ci";
  out += "\n";

  auto append_row = [&](const std::string& label, int year_index) {
    out += label;
    for (Metric m : kCostColumns) {
      const auto samples =
          year_index < 0 ? scen.total_samples(m) : scen.year_samples(m, year_index);
      if (samples.size() >= 2) {
        const auto s = stats::mean_ci(samples, sim.confidence_level);
        out += "," + disp(s.mean / kMillion) + "," + disp((s.ci_high - s.mean) / kMillion);
      } else {
        out += "," + disp(samples.at(0) / kMillion) + ",";
      }
    }
    out += "\n";
  };
  for (int y = 0; y < sim.years(); ++y) append_row(std::to_string(sim.start_year + y), y);
  append_row("TOTAL", -1);
  return out;
}

std::string events_csv(const ScenarioResult& scen, const SimulationConfig& sim) {
  std::string out = "year,deaths_mean,deaths_ci,diagnoses_mean,diagnoses_ci\n";
  auto emit = [&](const std::string& label, const std::vector<double>& deaths,
                  const std::vector<double>& diagnoses) {
    out += label;
    for (const auto& samples : {deaths, diagnoses}) {
      if (samples.size() >= 2) {
        const auto s = stats::mean_ci(samples, sim.confidence_level);
        out += "," + disp(s.mean) + "," + disp(s.ci_high - s.mean);
      } else {
        out += "," + disp(samples.at(0)) + ",";
      }
    }
    out += "\n";
  };
  for (int y = 0; y < sim.years(); ++y)
    emit(std::to_string(sim.start_year + y), scen.year_samples(Metric::Deaths, y),
         scen.year_samples(Metric::Diagnoses, y));
  emit("TOTAL", scen.total_samples(Metric::Deaths), scen.total_samples(Metric::Diagnoses));
  return out;
}

std::string differences_csv(const ScenarioResult& covid, const ScenarioResult& nocovid,
                            const SimulationConfig& sim) {
  std::string out = "metric,mean_diff,ci_low,ci_high,p_value\n";
  for (Metric m : kAllMetrics) {
    const auto a = covid.total_samples(m);
    const auto b = nocovid.total_samples(m);
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    out += metric_name(m);
    if (diff.size() >= 2) {
      const auto s = stats::mean_ci(diff, sim.confidence_level);
      const double p = stats::welch_t_test(a, b);
      out += "," + full(display_value(m, s.mean)) + "," + full(display_value(m, s.ci_low)) +
             "," + full(display_value(m, s.ci_high)) + "," + full(p);
    } else {
      out += "," + full(display_value(m, diff.at(0))) + ",,,";
    }
    out += "\n";
  }
  return out;
}

std::string replications_csv(const ScenarioResult& scen, const SimulationConfig& sim) {
  std::string out =
      "replication,year,direct_cost,indirect_death_cost,indirect_other_cost,total_cost,"
      "deaths,diagnoses\n";
  for (std::size_t r = 0; r < scen.replications.size(); ++r) {
    const auto& years = scen.replications[r].years;
    for (int y = 0; y < sim.years(); ++y) {
      const auto& ym = years[static_cast<std::size_t>(y)];
      out += std::to_string(r) + "," + std::to_string(sim.start_year + y);
      out += "," + full(ym.direct) + "," + full(ym.indirect_death) + "," +
             full(ym.indirect_other) + "," + full(ym.total_cost()) + "," + full(ym.deaths) +
             "," + full(ym.diagnoses);
      out += "\n";
    }
  }
  return out;
}

std::string metric_summary_csv(const ScenarioResult& scen, const SimulationConfig& sim,
                               Metric m) {
  std::string out = "year,n,mean,sd,ci_low,ci_high\n";
  auto emit = [&](const std::string& label, const std::vector<double>& samples) {
    out += label + "," + std::to_string(samples.size());
    if (samples.size() >= 2) {
      const auto s = stats::mean_ci(samples, sim.confidence_level);
      out += "," + full(s.mean) + "," + full(s.sd) + "," + full(s.ci_low) + "," +
             full(s.ci_high);
    } else {
      out += "," + full(samples.at(0)) + ",,,";
    }
    out += "\n";
  };
  for (int y = 0; y < sim.years(); ++y)
    emit(std::to_string(sim.start_year + y), scen.year_samples(m, y));
  emit("TOTAL", scen.total_samples(m));
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

void emit_reports(const ExperimentResult& result, const LoadedInputs& inputs,
                  const std::string& out_dir) {
  const SimulationConfig& sim = inputs.sim;
  if ((result.nocovid && result.nocovid->replications.empty()) ||
      (result.covid && result.covid->replications.empty()) ||
      (!result.nocovid && !result.covid))
    throw std::invalid_argument("emit_reports: no replication results");

  std::vector<PendingFile> files;
  auto add_scenario = [&](const char* name, const ScenarioResult& scen) {
    files.push_back({std::string("costs_") + name + ".csv", costs_csv(scen, sim)});
    files.push_back({std::string("events_") + name + ".csv", events_csv(scen, sim)});
    files.push_back(
        {std::string("raw/") + name + "_replications.csv", replications_csv(scen, sim)});
    for (Metric m : kAllMetrics)
      files.push_back({std::string("raw/") + name + "_" + metric_name(m) + ".csv",
                       metric_summary_csv(scen, sim, m)});
  };
  if (result.nocovid) add_scenario("nocovid", *result.nocovid);
  if (result.covid) add_scenario("covid", *result.covid);
  if (result.nocovid && result.covid)
    files.push_back({"differences.csv", differences_csv(*result.covid, *result.nocovid, sim)});

  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "raw", ec);
  if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

  json manifest;
  manifest["version"] = kVersion;
  const auto now = std::chrono::system_clock::now();
  manifest["written_at_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  json cfg = json::object();
  for (const auto& [key, value] : inputs.snapshot) cfg[key] = value;
  manifest["config"] = cfg;
  manifest["config_effective"] = {
      {"replications", sim.replications},
      {"population_fraction", sim.population_fraction},
      {"scale_factor", sim.scale_factor},
      {"base_seed", sim.base_seed},
      {"common_random_numbers", sim.common_random_numbers},
      {"threads", sim.threads},
      {"lockdown_start_cycle", inputs.lockdown.lockdown_start},
      {"lockdown_end_cycle", inputs.lockdown.lockdown_end},
  };
  manifest["calibrated_params_csv"] = dump_params_csv(inputs);
  if (result.nocovid) manifest["seeds"]["nocovid"] = result.nocovid->seeds;
  if (result.covid) manifest["seeds"]["covid"] = result.covid->seeds;

  json file_list = json::array();
  for (const PendingFile& f : files) {
    const fs::path target = fs::path(out_dir) / f.name;
    std::ofstream out(target, std::ios::binary);
    if (!out) throw IoError("cannot write " + target.string());
    out << f.content;
    if (!out) throw IoError("write failed: " + target.string());
    char digest[32];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(f.content)));
    file_list.push_back(
        {{"name", f.name}, {"bytes", f.content.size()}, {"fnv1a64", digest}});
  }
  manifest["files"] = file_list;

  const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + manifest_path.string());
  out << manifest.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + manifest_path.string());
}

}  // namespace bcsim
