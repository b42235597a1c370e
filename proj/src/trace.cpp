#include "gsm/trace.hpp"

#include <cmath>
#include <stdexcept>

#include "gsm/text.hpp"

namespace gsm {

RunResult run(MachineTerm term, const RunOptions& options,
              const Calculus& calculus, Algorithm& algorithm) {
  if (!(options.sample_interval > 0.0))
    throw std::invalid_argument("sample interval must be positive");
  if (!(options.t_max >= term.time()))
    throw std::invalid_argument("horizon must not precede the clock");

  const double t0 = term.time();
  const double dt = options.sample_interval;
  // Grid points t0 + k*dt for k = 0..last; the slack absorbs representation
  // error when dt divides the horizon.
  const auto last =
      static_cast<std::uint64_t>(std::floor((options.t_max - t0) / dt + 1e-9));
  auto grid_time = [&](std::uint64_t k) {
    return t0 + static_cast<double>(k) * dt;
  };

  RunResult result;
  if (options.validate_each_step) {
    result.violations = validate(term, calculus, algorithm);
    if (!result.violations.empty()) return result;
  }

  auto emit = [&](std::uint64_t k) {
    result.records.push_back(TraceRecord{grid_time(k), term.species().snapshot()});
  };

  std::uint64_t next_k = 0;
  while (next_k <= last) {
    std::optional<NextEvent> event = algorithm.next(term);
    if (!event) {
      result.deadlock_time = term.time();
      for (; next_k <= last; ++next_k) emit(next_k);
      break;
    }
    // The state is a right-continuous step function: a grid point exactly at
    // the event time reflects the post-event state.
    while (next_k <= last && grid_time(next_k) < event->time) {
      emit(next_k);
      ++next_k;
    }
    if (next_k > last) break;
    apply_event(term, *event, calculus, algorithm);
    ++result.steps;
    if (options.validate_each_step) {
      result.violations = validate(term, calculus, algorithm);
      if (!result.violations.empty()) break;
    }
  }

  result.columns.assign(term.species().keys().begin(),
                        term.species().keys().end());
  return result;
}

std::string csv_field(const std::string& text) {
  bool needs_quotes = text.find_first_of(",\"\n") != std::string::npos;
  if (!needs_quotes) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string trace_csv(const RunResult& result, const DisplayNameFn& name) {
  std::string out = "time";
  for (const SpeciesKey& column : result.columns) {
    out += ',';
    out += csv_field(name(column));
  }
  out += '\n';
  for (const TraceRecord& record : result.records) {
    out += format_double_p12(record.time);
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
      out += ',';
      Count value = i < record.populations.size() ? record.populations[i] : 0;
      out += format_int(value);
    }
    out += '\n';
  }
  return out;
}

}  // namespace gsm
