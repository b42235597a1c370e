#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsm/machine.hpp"
#include "gsm/species.hpp"

namespace gsm {

// Populations sampled at one grid time. The vector covers the species known
// at sampling time in insertion order; columns discovered later are implied
// zero.
struct TraceRecord {
  double time = 0.0;
  std::vector<Count> populations;
};

struct RunOptions {
  double t_max = 0.0;
  double sample_interval = 0.0;
  bool validate_each_step = false;
};

struct RunResult {
  std::vector<SpeciesKey> columns;
  std::vector<TraceRecord> records;
  std::optional<double> deadlock_time;
  std::uint64_t steps = 0;
  std::vector<std::string> violations;
};

// Runs the term forward, sampling the state as a right-continuous step
// function on the grid t0, t0+dt, ..., up to and including t_max. On
// deadlock the last state fills the remaining grid points. When validation
// is on, the run stops at the first violation.
RunResult run(MachineTerm term, const RunOptions& options,
              const Calculus& calculus, Algorithm& algorithm);

using DisplayNameFn = std::function<std::string(const SpeciesKey&)>;

// CSV with a time column followed by one column per species; records shorter
// than the column list are padded with zeros.
std::string trace_csv(const RunResult& result, const DisplayNameFn& name);

std::string csv_field(const std::string& text);

}  // namespace gsm
