#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsm/plugins.hpp"
#include "gsm/trace.hpp"

namespace gsm {

enum class AlgorithmKind { direct, nrm };

std::unique_ptr<Algorithm> make_algorithm(AlgorithmKind kind,
                                          std::uint64_t seed);

struct EnsembleOptions {
  AlgorithmKind algorithm = AlgorithmKind::direct;
  std::uint64_t base_seed = 0;
  double t_max = 0.0;
  double sample_interval = 0.0;
  std::uint64_t runs = 1;
  bool validate = false;
};

// Per-grid-point mean and sample standard deviation over all runs; a row
// and column layout shared by every run. Columns appear in the order they
// were first observed across the run sequence; runs that never saw a
// species contribute zeros (D6 backfill).
struct EnsembleResult {
  std::vector<SpeciesKey> columns;
  std::vector<double> times;
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> stds;
  std::uint64_t runs = 0;
  std::uint64_t deadlocked_runs = 0;
  std::optional<double> first_deadlock_time;
  std::vector<std::string> violations;
};

// One trajectory with the RNG stream for run `run_index` of the ensemble
// rooted at the options' base seed.
RunResult run_single(const Calculus& calculus, const EnsembleOptions& options,
                     std::uint64_t run_index);

// Runs all trajectories; aborts at the first validation violation.
EnsembleResult run_ensemble(const Calculus& calculus,
                            const EnsembleOptions& options);

std::string ensemble_csv(const EnsembleResult& result,
                         const DisplayNameFn& name);

}  // namespace gsm
