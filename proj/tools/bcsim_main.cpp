#include <algorithm>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bcsim/config.hpp"
#include "bcsim/engine.hpp"
#include "bcsim/errors.hpp"
#include "bcsim/reports.hpp"
#include "bcsim/rng.hpp"

namespace {

struct SimulateOptions {
  std::string config_path;
  std::string scenario = "both";
  std::string out_dir;
  int replications = -1;
  long long seed = -1;
  double fraction = -1.0;
  int threads = -1;
  bool no_crn = false;
  bool dump_params = false;
};

int run_simulate(const SimulateOptions& opt) {
  bcsim::LoadedInputs inputs = bcsim::load_config(opt.config_path);

  if (opt.replications > 0) inputs.sim.replications = opt.replications;
  if (opt.seed >= 0) inputs.sim.base_seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.fraction > 0.0) {
    inputs.sim.population_fraction = opt.fraction;
    inputs.sim.scale_factor = 1.0 / opt.fraction;
  }
  if (opt.threads > 0) inputs.sim.threads = opt.threads;
  if (opt.no_crn) inputs.sim.common_random_numbers = false;
  inputs.sim.validate();

  if (opt.dump_params) {
    std::cout << bcsim::dump_params_csv(inputs);
    return bcsim::exit_code::kOk;
  }

  if (opt.out_dir.empty())
    throw bcsim::ConfigError("--out is required unless --dump-params is given");

  bcsim::ScenarioSelection selection;
  if (opt.scenario == "both")
    selection = bcsim::ScenarioSelection::Both;
  else if (opt.scenario == "covid")
    selection = bcsim::ScenarioSelection::Covid;
  else if (opt.scenario == "nocovid")
    selection = bcsim::ScenarioSelection::NoCovid;
  else
    throw bcsim::ConfigError("--scenario must be covid, nocovid or both");

  bcsim::rng::SplitMix64 cohort_rng(inputs.sim.base_seed);
  const auto cohort = bcsim::build_initial_cohort(inputs.ages, inputs.disease,
                                                  inputs.sim.population_fraction, cohort_rng);

  int max_age = 25;
  for (const auto& p : cohort) max_age = std::max(max_age, static_cast<int>(p.age));
  max_age += inputs.sim.years();

  const bcsim::TransitionTables tables(inputs.params, inputs.costs, inputs.sim.total_cycles,
                                       max_age);

  std::cerr << "cohort: " << cohort.size() << " persons, " << inputs.sim.replications
            << " replications, scenario " << opt.scenario << "\n";
  const auto result =
      bcsim::run_experiment(cohort, tables, inputs.lockdown, inputs.sim, selection);

  bcsim::emit_reports(result, inputs, opt.out_dir);
  std::cerr << "reports written to " << opt.out_dir << "\n";
  return bcsim::exit_code::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov-cohort Monte Carlo simulator of breast cancer progression and costs"};
  app.set_version_flag("--version", bcsim::kVersion);
  app.require_subcommand(1);

  SimulateOptions opt;
  CLI::App* sim = app.add_subcommand("simulate", "run the paired-scenario experiment");
  sim->add_option("--config", opt.config_path, "configuration file")->required();
  sim->add_option("--scenario", opt.scenario, "covid|nocovid|both (default both)");
  sim->add_option("--replications", opt.replications, "override replication count")
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", opt.seed, "override base seed")->check(CLI::NonNegativeNumber);
  sim->add_option("--out", opt.out_dir, "output directory for reports");
  sim->add_option("--fraction", opt.fraction, "override population fraction")
      ->check(CLI::PositiveNumber);
  sim->add_option("--threads", opt.threads, "worker threads for replications")
      ->check(CLI::PositiveNumber);
  sim->add_flag("--no-crn", opt.no_crn,
                "use disjoint random seeds for the two scenarios");
  sim->add_flag("--dump-params", opt.dump_params,
                "print the calibrated parameter set as CSV and exit");

  try {
    app.parse(argc, argv);
    return run_simulate(opt);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return bcsim::exit_code::kConfig;
  } catch (const bcsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return bcsim::exit_code::kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return bcsim::exit_code::kConfig;
  } catch (const bcsim::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return bcsim::exit_code::kModel;
  } catch (const bcsim::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return bcsim::exit_code::kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
