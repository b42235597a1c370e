#include "gsm/driver.hpp"

#include <cmath>
#include <unordered_map>

#include "gsm/direct_method.hpp"
#include "gsm/errors.hpp"
#include "gsm/next_reaction.hpp"
#include "gsm/random.hpp"
#include "gsm/text.hpp"

namespace gsm {

std::unique_ptr<Algorithm> make_algorithm(AlgorithmKind kind,
                                          std::uint64_t seed) {
  auto uniform = std::make_unique<MtUniform>(seed);
  if (kind == AlgorithmKind::direct)
    return std::make_unique<DirectMethod>(std::move(uniform));
  return std::make_unique<NextReactionMethod>(std::move(uniform));
}

RunResult run_single(const Calculus& calculus, const EnsembleOptions& options,
                     std::uint64_t run_index) {
  std::unique_ptr<Algorithm> algorithm = make_algorithm(
      options.algorithm, derive_stream_seed(options.base_seed, run_index));
  RunOptions run_options{options.t_max, options.sample_interval,
                         options.validate};
  return run(initial_term(calculus, *algorithm), run_options, calculus,
             *algorithm);
}

EnsembleResult run_ensemble(const Calculus& calculus,
                            const EnsembleOptions& options) {
  EnsembleResult out;
  out.runs = options.runs;

  std::unordered_map<SpeciesKey, std::size_t, SpeciesKeyHash> column_index;
  std::vector<std::vector<double>> sums;
  std::vector<std::vector<double>> squares;

  for (std::uint64_t r = 0; r < options.runs; ++r) {
    RunResult result = run_single(calculus, options, r);
    if (!result.violations.empty()) {
      for (const std::string& violation : result.violations)
        out.violations.push_back("run " + format_int(static_cast<long long>(r)) +
                                 ": " + violation);
      return out;
    }
    if (result.deadlock_time) {
      ++out.deadlocked_runs;
      if (!out.first_deadlock_time)
        out.first_deadlock_time = *result.deadlock_time;
    }

    if (r == 0) {
      out.times.reserve(result.records.size());
      for (const TraceRecord& record : result.records)
        out.times.push_back(record.time);
      sums.resize(result.records.size());
      squares.resize(result.records.size());
    } else if (result.records.size() != out.times.size()) {
      throw InternalError("sampling grids differ across runs");
    }

    // Columns first seen in this run extend every row; earlier runs held
    // them at zero, so the running sums need no correction.
    std::vector<std::size_t> remap(result.columns.size());
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
      auto [it, inserted] =
          column_index.emplace(result.columns[c], out.columns.size());
      if (inserted) {
        out.columns.push_back(result.columns[c]);
        for (std::vector<double>& row : sums) row.push_back(0.0);
        for (std::vector<double>& row : squares) row.push_back(0.0);
      }
      remap[c] = it->second;
    }

    for (std::size_t g = 0; g < result.records.size(); ++g) {
      const TraceRecord& record = result.records[g];
      for (std::size_t c = 0; c < record.populations.size(); ++c) {
        double value = static_cast<double>(record.populations[c]);
        sums[g][remap[c]] += value;
        squares[g][remap[c]] += value * value;
      }
    }
  }

  double n = static_cast<double>(options.runs);
  out.means.resize(out.times.size());
  out.stds.resize(out.times.size());
  for (std::size_t g = 0; g < out.times.size(); ++g) {
    out.means[g].resize(out.columns.size());
    out.stds[g].resize(out.columns.size());
    for (std::size_t c = 0; c < out.columns.size(); ++c) {
      double mean = sums[g][c] / n;
      out.means[g][c] = mean;
      double variance = 0.0;
      if (options.runs > 1) {
        variance = (squares[g][c] - n * mean * mean) / (n - 1.0);
        if (variance < 0.0) variance = 0.0;
      }
      out.stds[g][c] = std::sqrt(variance);
    }
  }
  return out;
}

std::string ensemble_csv(const EnsembleResult& result,
                         const DisplayNameFn& name) {
  std::string out = "time";
  for (const SpeciesKey& column : result.columns) {
    std::string display = name(column);
    out += ',';
    out += csv_field(display + ":mean");
    out += ',';
    out += csv_field(display + ":std");
  }
  out += '\n';
  for (std::size_t g = 0; g < result.times.size(); ++g) {
    out += format_double_p12(result.times[g]);
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
      out += ',';
      out += format_double_p12(result.means[g][c]);
      out += ',';
      out += format_double_p12(result.stds[g][c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace gsm
