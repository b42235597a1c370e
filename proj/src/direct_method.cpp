#include "gsm/direct_method.hpp"

#include <cmath>

#include "gsm/errors.hpp"
#include "gsm/text.hpp"

namespace gsm {

double propensity(const Reaction& reaction, const SpeciesMap& species) {
  const auto& entries = reaction.reactants().entries();
  if (entries.size() == 1) {
    const auto& [key, multiplicity] = entries.front();
    double population = static_cast<double>(species.population(key));
    if (multiplicity == 1) return reaction.rate() * population;
    // A + A: distinct unordered pairs.
    return reaction.rate() * population * (population - 1.0) / 2.0;
  }
  double product = reaction.rate();
  for (const auto& [key, multiplicity] : entries)
    product *= static_cast<double>(species.population(key));
  return product;
}

std::vector<ReactionActivity> DirectMethod::init(std::span<const Reaction> fresh,
                                                 const MachineTerm& term) {
  std::vector<ReactionActivity> entries;
  entries.reserve(fresh.size());
  for (const Reaction& reaction : fresh)
    entries.push_back(ReactionActivity{
        reaction, DirectActivity{propensity(reaction, term.species())}});
  return entries;
}

std::vector<ReactionActivity> DirectMethod::updates(const SpeciesKey& key,
                                                    const MachineTerm& term) {
  std::vector<ReactionActivity> entries;
  const ReactionMap& table = term.reactions();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Reaction& reaction = table.reaction_at(i);
    if (!reaction.has_reactant(key)) continue;
    entries.push_back(ReactionActivity{
        reaction, DirectActivity{propensity(reaction, term.species())}});
  }
  return entries;
}

std::optional<NextEvent> DirectMethod::next(const MachineTerm& term) {
  const ReactionMap& table = term.reactions();
  double total = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i)
    total += std::get<DirectActivity>(table.activity_at(i)).propensity;
  if (!(total > 0.0)) return std::nullopt;

  double u_time = uniform_->next();
  double u_pick = uniform_->next();
  double time = term.time() + std::log(1.0 / u_time) / total;

  // Select the first index whose cumulative propensity reaches
  // u_pick * total; zero-propensity reactions can never be chosen.
  double target = u_pick * total;
  double cumulative = 0.0;
  std::optional<std::size_t> chosen;
  std::optional<std::size_t> last_positive;
  for (std::size_t i = 0; i < table.size(); ++i) {
    double a = std::get<DirectActivity>(table.activity_at(i)).propensity;
    if (a <= 0.0) continue;
    last_positive = i;
    double previous = cumulative;
    cumulative += a;
    if (previous < target && target <= cumulative) {
      chosen = i;
      break;
    }
  }
  // Rounding in the cumulative sum can leave the target just above the final
  // partial sum; the last feasible reaction absorbs that sliver.
  if (!chosen) chosen = last_positive;
  return NextEvent{table.reaction_at(*chosen), time};
}

std::vector<std::string> DirectMethod::audit(const MachineTerm& term) const {
  std::vector<std::string> report;
  const ReactionMap& table = term.reactions();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto* activity = std::get_if<DirectActivity>(&table.activity_at(i));
    if (!activity) {
      report.push_back("foreign activity attached to " +
                       table.reaction_at(i).str());
      continue;
    }
    double expected = propensity(table.reaction_at(i), term.species());
    double tolerance = 1e-12 * std::max(std::abs(expected),
                                        std::abs(activity->propensity));
    if (std::abs(expected - activity->propensity) > tolerance)
      report.push_back("stale propensity for " + table.reaction_at(i).str() +
                       ": stored " + format_double(activity->propensity) +
                       ", expected " + format_double(expected));
  }
  return report;
}

}  // namespace gsm
