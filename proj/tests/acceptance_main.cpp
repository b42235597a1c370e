// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gsm/crn.hpp"
#include "gsm/direct_method.hpp"
#include "gsm/driver.hpp"
#include "gsm/machine.hpp"
#include "gsm/model.hpp"
#include "gsm/multi.hpp"
#include "gsm/random.hpp"
#include "gsm/spi.hpp"
#include "gsm/text.hpp"
#include "gsm/trace.hpp"
#include "support.hpp"

using namespace gsm;
using test::ms;

namespace {

int failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %2d  %-28s  %s\n", ok ? "PASS" : "FAIL", number, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

CrnCalculus bundled_crn(const std::string& name) {
  return CrnCalculus(parse_crn(test::slurp(test::model_path(name)), name));
}

SpiCalculus bundled_spi(const std::string& name) {
  return SpiCalculus(parse_spi(test::slurp(test::model_path(name)), name));
}

// 1. Ensemble mean of pure degradation at t=1 vs the analytic CTMC mean.
void degradation_exactness() {
  auto start = std::chrono::steady_clock::now();
  CrnCalculus calculus(
      parse_crn("A ->{1} \ninit A 1000", "degradation.crn"));
  EnsembleOptions options;
  options.base_seed = 101;
  options.t_max = 1.0;
  options.sample_interval = 1.0;
  options.runs = 1000;
  EnsembleResult result = run_ensemble(calculus, options);

  double expected = 1000.0 * std::exp(-1.0);
  double mean = result.means[1][0];
  double seconds = elapsed_seconds(start);
  bool ok = result.violations.empty() &&
            std::abs(mean - expected) <= 0.03 * expected && seconds < 10.0;
  report(1, "degradation exactness", ok,
         "mean=" + format_double(mean) + " expected=" +
             format_double(expected) + " tol=3% time=" +
             format_double(seconds) + "s");
}

// 2. Mean first-firing time of the homodimer with two copies.
void homodimer_combinatorics() {
  CrnCalculus calculus(
      parse_crn("A + A ->{0.5} B\ninit A 2", "homodimer.crn"));
  const int runs = 10000;
  double sum = 0.0;
  for (int i = 0; i < runs; ++i) {
    DirectMethod algorithm(std::make_unique<MtUniform>(
        derive_stream_seed(202, static_cast<std::uint64_t>(i))));
    MachineTerm term = initial_term(calculus, algorithm);
    if (!step(term, calculus, algorithm)) {
      report(2, "homodimer combinatorics", false, "unexpected deadlock");
      return;
    }
    sum += term.time();
  }
  double mean = sum / runs;
  bool ok = std::abs(mean - 2.0) <= 0.05 * 2.0;
  report(2, "homodimer combinatorics", ok,
         "mean=" + format_double(mean) + " expected=2 tol=5%");
}

// 3. Direct-method selection frequency on pinned activities {3, 1}.
void selection_frequencies() {
  MachineTerm term;
  term.species().insert_new(SpeciesKey("A"), 1);
  Reaction first(ms({"A"}), 3.0, ms({}));
  Reaction second(ms({"A"}), 1.0, ms({}));
  term.reactions().append(first, DirectActivity{3.0});
  term.reactions().append(second, DirectActivity{1.0});

  DirectMethod algorithm(std::make_unique<MtUniform>(303));
  const int draws = 100000;
  int first_count = 0;
  for (int i = 0; i < draws; ++i) {
    auto event = algorithm.next(term);
    if (!event) {
      report(3, "selection frequencies", false, "no event");
      return;
    }
    if (event->reaction == first) ++first_count;
  }
  double frequency = static_cast<double>(first_count) / draws;
  bool ok = std::abs(frequency - 0.75) <= 0.01;
  report(3, "selection frequencies", ok,
         "freq=" + format_double(frequency) + " expected=0.75 tol=0.01");
}

// 4. Empirical law of the two-state switch at t=2 vs a matrix exponential
// computed here by uniformisation, independent of the library's propensity
// code. States are indexed by the copy number of A (B = 4 - A).
void small_ctmc_oracle() {
  constexpr int kStates = 5;
  constexpr double kRateAB = 1.0, kRateBA = 2.0, kTime = 2.0;
  constexpr double kLambda = 8.0;  // max exit rate, at A=0: 2*4

  std::array<double, kStates> p{};
  p[2] = 1.0;  // init A 2
  std::array<double, kStates> distribution{};
  double weight = std::exp(-kLambda * kTime);
  double total = weight;
  for (int i = 0; i < kStates; ++i) distribution[i] = weight * p[i];
  for (int k = 1; k < 400; ++k) {
    std::array<double, kStates> next{};
    for (int a = 0; a < kStates; ++a) {
      double down = a * kRateAB / kLambda;
      double up = (4 - a) * kRateBA / kLambda;
      if (a > 0) next[a - 1] += p[a] * down;
      if (a < 4) next[a + 1] += p[a] * up;
      next[a] += p[a] * (1.0 - down - up);
    }
    p = next;
    weight *= kLambda * kTime / k;
    total += weight;
    for (int i = 0; i < kStates; ++i) distribution[i] += weight * p[i];
    if (total > 1.0 - 1e-14) break;
  }

  CrnCalculus calculus = bundled_crn("flipflop.crn");
  const int runs = 100000;
  std::array<long long, kStates> histogram{};
  EnsembleOptions options;
  options.base_seed = 404;
  options.t_max = kTime;
  options.sample_interval = kTime;
  for (int i = 0; i < runs; ++i) {
    RunResult run_result =
        run_single(calculus, options, static_cast<std::uint64_t>(i));
    ++histogram[run_result.records.back().populations[0]];
  }

  double tv = 0.0;
  for (int i = 0; i < kStates; ++i)
    tv += std::abs(static_cast<double>(histogram[i]) / runs - distribution[i]);
  tv *= 0.5;
  bool ok = tv < 0.02;
  report(4, "small-ctmc oracle", ok,
         "tv=" + format_double(tv) + " tol=0.02");
}

// 5. Per-species ensemble means under both algorithms at 5 checkpoints.
void direct_equals_nrm() {
  struct Config {
    const char* model;
    double t_max;
  };
  const std::vector<Config> configs{
      {"degradation.crn", 1.0}, {"homodimer.crn", 5.0},
      {"flipflop.crn", 2.5},    {"gene.crn", 50.0},
      {"polymer.spi", 4.0},     {"cell.spi", 20.0},
      {"mixed.multi", 2.0},     {"single.multi", 2.5}};
  const std::uint64_t runs = 10000;

  int comparisons = 0;
  double worst = 0.0;
  std::string worst_at = "none";
  bool ok = true;
  for (const Config& config : configs) {
    LoadedModel model = load_model(test::model_path(config.model));

    EnsembleOptions options;
    options.base_seed = 505;
    options.t_max = config.t_max;
    options.sample_interval = config.t_max / 5.0;
    options.runs = runs;
    options.algorithm = AlgorithmKind::direct;
    EnsembleResult direct = run_ensemble(*model.calculus, options);
    options.algorithm = AlgorithmKind::nrm;
    options.base_seed = 606;
    EnsembleResult nrm = run_ensemble(*model.calculus, options);

    auto indexed = [](const EnsembleResult& result) {
      std::map<std::string, std::size_t> out;
      for (std::size_t i = 0; i < result.columns.size(); ++i)
        out[result.columns[i].str()] = i;
      return out;
    };
    std::map<std::string, std::size_t> left = indexed(direct);
    std::map<std::string, std::size_t> right = indexed(nrm);
    std::vector<std::string> names;
    for (const auto& [name, index] : left) names.push_back(name);
    for (const auto& [name, index] : right)
      if (!left.contains(name)) names.push_back(name);

    for (std::size_t row = 1; row < direct.times.size(); ++row) {
      for (const std::string& name : names) {
        double m1 = 0.0, s1 = 0.0, m2 = 0.0, s2 = 0.0;
        if (auto it = left.find(name); it != left.end()) {
          m1 = direct.means[row][it->second];
          s1 = direct.stds[row][it->second];
        }
        if (auto it = right.find(name); it != right.end()) {
          m2 = nrm.means[row][it->second];
          s2 = nrm.stds[row][it->second];
        }
        double n = static_cast<double>(runs);
        double se = std::sqrt(s1 * s1 / n + s2 * s2 / n);
        double gap = std::abs(m1 - m2);
        ++comparisons;
        double severity = se > 0 ? gap / se : (gap > 0 ? 1e9 : 0.0);
        if (severity > worst) {
          worst = severity;
          worst_at = std::string(config.model) + ":" + name + "@t=" +
                     format_double(direct.times[row]);
        }
        if (gap > 3.0 * se) ok = false;
      }
    }
  }
  report(5, "direct equals nrm", ok,
         "comparisons=" + format_int(comparisons) + " worst=" +
             format_double(worst) + "se at " + worst_at + " tol=3se");
}

// 6. Per-step validation over long runs of every bundled model; the three
// non-deadlocking models must cover at least ten thousand steps.
void incremental_scratch_audit() {
  struct Config {
    const char* model;
    double t_max;
    bool wants_depth;
  };
  const std::vector<Config> configs{
      {"degradation.crn", 20.0, false}, {"homodimer.crn", 10.0, false},
      {"flipflop.crn", 2300.0, true},   {"gene.crn", 400.0, false},
      {"polymer.spi", 2700.0, true},    {"cell.spi", 200.0, false},
      {"mixed.multi", 60.0, false},     {"single.multi", 2300.0, true}};

  bool ok = true;
  std::uint64_t deepest = 0;
  std::string detail;
  for (const Config& config : configs) {
    LoadedModel model = load_model(test::model_path(config.model));
    for (AlgorithmKind kind : {AlgorithmKind::direct, AlgorithmKind::nrm}) {
      EnsembleOptions options;
      options.algorithm = kind;
      options.base_seed = 707;
      options.t_max = config.t_max;
      options.sample_interval = config.t_max;
      options.validate = true;
      RunResult result = run_single(*model.calculus, options, 0);
      deepest = std::max(deepest, result.steps);
      if (!result.violations.empty()) {
        ok = false;
        detail = std::string(config.model) + ": " + result.violations[0];
      }
      if (config.wants_depth && result.steps < 10000) {
        ok = false;
        detail = std::string(config.model) + ": only " +
                 format_int(static_cast<long long>(result.steps)) + " steps";
      }
    }
  }
  if (detail.empty())
    detail = "zero violations, deepest run " +
             format_int(static_cast<long long>(deepest)) + " steps";
  report(6, "incremental/scratch audit", ok, detail);
}

// 7. The polymer model keeps discovering species unseen at t=0, with the
// reaction table audited against a from-scratch replay at every step.
void jit_discovery() {
  SpiCalculus calculus = bundled_spi("polymer.spi");
  SpeciesMultiset initial = calculus.initial_species();

  EnsembleOptions options;
  options.base_seed = 808;
  options.t_max = 8.0;
  options.sample_interval = 8.0;
  options.validate = true;
  RunResult result = run_single(calculus, options, 0);

  int fresh = 0;
  for (const SpeciesKey& key : result.columns)
    if (!initial.contains(key)) ++fresh;
  bool ok = result.violations.empty() && fresh >= 10;
  report(7, "jit discovery", ok,
         "fresh species=" + format_int(fresh) + " needed=10 violations=" +
             format_int(static_cast<long long>(result.violations.size())));
}

// 8. Byte-identical CSV across repeated runs, per model type and algorithm.
void determinism() {
  const std::vector<std::string> invocations{
      "run " + test::model_path("flipflop.crn") +
          " --tmax 5 --dt 0.5 --seed 9 --algorithm direct",
      "run " + test::model_path("flipflop.crn") +
          " --tmax 5 --dt 0.5 --seed 9 --algorithm nrm",
      "run " + test::model_path("polymer.spi") +
          " --tmax 6 --dt 1 --seed 9 --algorithm direct",
      "run " + test::model_path("polymer.spi") +
          " --tmax 6 --dt 1 --seed 9 --algorithm nrm",
      "run " + test::model_path("mixed.multi") +
          " --tmax 2 --dt 0.5 --seed 9 --algorithm direct",
      "run " + test::model_path("mixed.multi") +
          " --tmax 2 --dt 0.5 --seed 9 --algorithm nrm",
      "run " + test::model_path("flipflop.crn") +
          " --tmax 2 --dt 0.5 --seed 9 --runs 5"};
  bool ok = true;
  std::string detail = "7 configs replayed";
  for (const std::string& invocation : invocations) {
    auto first = test::run_cli(invocation);
    auto second = test::run_cli(invocation);
    if (first.exit_code != 0 || second.exit_code != 0 ||
        first.out != second.out || first.out.empty()) {
      ok = false;
      detail = "mismatch: " + invocation;
      break;
    }
  }
  report(8, "determinism", ok, detail);
}

// 9. The multi-runtime is invisible for a single calculus and empty bridge.
void multi_conservativity() {
  bool ok = true;
  std::string detail = "single.multi == flipflop.crn under both algorithms";
  for (const char* algorithm : {"direct", "nrm"}) {
    std::string flags = std::string(" --tmax 5 --dt 0.5 --seed 7 --algorithm ") +
                        algorithm;
    auto tagged = test::run_cli("run " + test::model_path("single.multi") + flags);
    auto plain = test::run_cli("run " + test::model_path("flipflop.crn") + flags);
    if (tagged.exit_code != 0 || plain.exit_code != 0 ||
        tagged.out != plain.out || tagged.out.empty()) {
      ok = false;
      detail = std::string("divergence under ") + algorithm;
      break;
    }
  }
  report(9, "multi conservativity", ok, detail);
}

// 10. Every insertion order of every species emits the full reaction table
// exactly once, for the crn calculus and for multi-runtime bridge rows.
void exactly_once_emission() {
  auto sorted_strs = [](const std::vector<Reaction>& reactions) {
    std::vector<std::string> out;
    for (const Reaction& reaction : reactions) out.push_back(reaction.str());
    std::sort(out.begin(), out.end());
    return out;
  };
  auto sweep = [&](const Calculus& calculus, std::vector<SpeciesKey> order,
                   std::vector<std::string> expected) {
    std::sort(order.begin(), order.end());
    std::sort(expected.begin(), expected.end());
    do {
      std::vector<SpeciesKey> existing;
      std::vector<Reaction> collected;
      for (const SpeciesKey& key : order) {
        for (Reaction& reaction : calculus.reactions(key, existing))
          collected.push_back(std::move(reaction));
        existing.push_back(key);
      }
      if (sorted_strs(collected) != expected) return false;
    } while (std::next_permutation(order.begin(), order.end()));
    return true;
  };

  CrnModel crn_model = parse_crn(
      "A + B ->{1} C\nC + C ->{0.5} D\nD ->{2} E\nB + E ->{1} A\nA ->{3} B",
      "permutations.crn");
  CrnCalculus crn(crn_model);
  std::vector<std::string> crn_expected;
  for (const Reaction& reaction : crn_model.table)
    crn_expected.push_back(reaction.str());
  bool crn_ok = sweep(crn,
                      {SpeciesKey("A"), SpeciesKey("B"), SpeciesKey("C"),
                       SpeciesKey("D"), SpeciesKey("E")},
                      crn_expected);

  MultiRuntime runtime;
  runtime.register_calculus(
      "crn", std::make_unique<CrnCalculus>(parse_crn("A ->{3} B", "sub.crn")));
  runtime.register_calculus(
      "spi", std::make_unique<SpiCalculus>(parse_spi(
                 "X() = delay@1; Y() = delay@2 -> Y(); run X()", "sub.spi")));
  runtime.add_bridge(Reaction(ms({"crn::A", "spi::X()"}), 1.0, ms({"crn::B"})));
  runtime.add_bridge(
      Reaction(ms({"crn::B", "spi::Y()"}), 2.0, ms({"spi::X()"})));
  runtime.add_bridge(Reaction(ms({"crn::A"}), 0.5, ms({"spi::Y()"})));
  std::vector<std::string> multi_expected = sorted_strs(
      {Reaction(ms({"crn::A"}), 3.0, ms({"crn::B"})),
       Reaction(ms({"spi::X()"}), 1.0, ms({})),
       Reaction(ms({"spi::Y()"}), 2.0, ms({"spi::Y()"})),
       Reaction(ms({"crn::A", "spi::X()"}), 1.0, ms({"crn::B"})),
       Reaction(ms({"crn::B", "spi::Y()"}), 2.0, ms({"spi::X()"})),
       Reaction(ms({"crn::A"}), 0.5, ms({"spi::Y()"}))});
  bool multi_ok = sweep(runtime,
                        {SpeciesKey("crn::A"), SpeciesKey("crn::B"),
                         SpeciesKey("spi::X()"), SpeciesKey("spi::Y()")},
                        multi_expected);

  report(10, "exactly-once emission", crn_ok && multi_ok,
         std::string("crn 120 orders ") + (crn_ok ? "ok" : "FAILED") +
             ", bridge 24 orders " + (multi_ok ? "ok" : "FAILED"));
}

}  // namespace

int main() {
  degradation_exactness();
  homodimer_combinatorics();
  selection_frequencies();
  small_ctmc_oracle();
  direct_equals_nrm();
  incremental_scratch_audit();
  jit_discovery();
  determinism();
  multi_conservativity();
  exactly_once_emission();

  if (failures == 0)
    std::printf("all 10 acceptance criteria satisfied\n");
  else
    std::printf("%d criteria failing\n", failures);
  return failures == 0 ? 0 : 1;
}
