#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gsm/driver.hpp"
#include "gsm/errors.hpp"
#include "gsm/io.hpp"
#include "gsm/model.hpp"
#include "gsm/text.hpp"

namespace {

int run_command(const std::string& model_path, const gsm::EnsembleOptions& options,
                const std::string& out_path) {
  gsm::LoadedModel model = gsm::load_model(model_path);
  gsm::DisplayNameFn name = [&model](const gsm::SpeciesKey& key) {
    return model.calculus->display_name(key);
  };

  std::string csv;
  if (options.runs == 1) {
    gsm::RunResult result = gsm::run_single(*model.calculus, options, 0);
    if (!result.violations.empty()) {
      for (const std::string& violation : result.violations)
        std::cerr << "validation: " << violation << "\n";
      return 1;
    }
    if (result.deadlock_time)
      std::cerr << "deadlock at t=" << gsm::format_double(*result.deadlock_time)
                << "\n";
    csv = gsm::trace_csv(result, name);
  } else {
    gsm::EnsembleResult result = gsm::run_ensemble(*model.calculus, options);
    if (!result.violations.empty()) {
      for (const std::string& violation : result.violations)
        std::cerr << "validation: " << violation << "\n";
      return 1;
    }
    if (result.deadlocked_runs > 0)
      std::cerr << result.deadlocked_runs << " of " << options.runs
                << " runs deadlocked (first at t="
                << gsm::format_double(*result.first_deadlock_time) << ")\n";
    csv = gsm::ensemble_csv(result, name);
  }

  if (out_path.empty()) {
    std::cout << csv;
  } else {
    gsm::write_text_file(out_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic simulator for process-calculus models"};
  app.require_subcommand(1);

  std::string model_path;
  std::string algorithm = "direct";
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t runs = 1;
  double t_max = 0.0;
  double dt = 0.0;
  bool validate = false;

  CLI::App* run_cmd = app.add_subcommand("run", "simulate a model file");
  run_cmd->add_option("model", model_path, "model file (.crn, .spi or .multi)")
      ->required();
  run_cmd->add_option("--algorithm", algorithm, "simulation algorithm")
      ->check(CLI::IsMember({"direct", "nrm"}))
      ->capture_default_str();
  run_cmd->add_option("--seed", seed, "base RNG seed")->capture_default_str();
  run_cmd->add_option("--tmax", t_max, "simulation horizon")
      ->required()
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--dt", dt, "sampling interval")
      ->required()
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--runs", runs, "number of trajectories")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
  run_cmd->add_flag("--validate", validate,
                    "cross-check the machine state after every step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return 2;
  }

  gsm::EnsembleOptions options;
  options.algorithm = algorithm == "nrm" ? gsm::AlgorithmKind::nrm
                                         : gsm::AlgorithmKind::direct;
  options.base_seed = seed;
  options.t_max = t_max;
  options.sample_interval = dt;
  options.runs = runs;
  options.validate = validate;

  try {
    return run_command(model_path, options, out_path);
  } catch (const gsm::ParseError& error) {
    std::cerr << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
