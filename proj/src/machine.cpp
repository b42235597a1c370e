#include "gsm/machine.hpp"

#include <cmath>

#include "gsm/errors.hpp"
#include "gsm/text.hpp"

namespace gsm {

namespace {

// Writes the revised activities back into the table. Entries must refer to
// reactions already present and involving `key`; later entries override
// earlier ones for the same reaction.
void apply_updates(MachineTerm& term, const SpeciesKey& key,
                   Algorithm& algorithm) {
  std::vector<ReactionActivity> entries = algorithm.updates(key, term);
  for (const ReactionActivity& entry : entries) {
    std::optional<std::size_t> index = term.reactions().index_of(entry.reaction);
    if (!index)
      throw InternalError("update for unknown reaction: " +
                          entry.reaction.str());
    if (!entry.reaction.has_reactant(key))
      throw InternalError("update for reaction not involving " + key.str() +
                          ": " + entry.reaction.str());
    term.reactions().set_activity(*index, entry.activity);
  }
}

}  // namespace

void MachineTerm::set_time(double t) {
  if (!(t >= time_))
    throw InternalError("clock must not move backwards: " + format_double(t) +
                        " < " + format_double(time_));
  time_ = t;
}

void add_species(MachineTerm& term, const SpeciesKey& key,
                 const Calculus& calculus, Algorithm& algorithm) {
  if (std::optional<std::size_t> index = term.species().index_of(key)) {
    term.species().set_population(key, term.species().population_at(*index) + 1);
    apply_updates(term, key, algorithm);
    return;
  }

  // First appearance: discover reactions against the species known before
  // this one, then let the algorithm attach scheduling state. The species
  // population is already updated when the algorithm sees the term; the
  // reaction table is extended only afterwards.
  std::vector<SpeciesKey> existing(term.species().keys().begin(),
                                   term.species().keys().end());
  term.species().insert_new(key, 1);
  std::vector<Reaction> fresh = calculus.reactions(key, existing);
  for (const Reaction& reaction : fresh) {
    if (!reaction.has_reactant(key))
      throw InternalError("discovered reaction does not involve " + key.str() +
                          ": " + reaction.str());
  }
  std::vector<ReactionActivity> entries = algorithm.init(fresh, term);
  if (entries.size() != fresh.size())
    throw InternalError("init must return one activity per fresh reaction");
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    if (!(entries[i].reaction == fresh[i]))
      throw InternalError("init reordered fresh reactions");
    term.reactions().append(entries[i].reaction, entries[i].activity);
  }
}

void remove_species(MachineTerm& term, const SpeciesKey& key,
                    Algorithm& algorithm) {
  std::optional<std::size_t> index = term.species().index_of(key);
  if (!index)
    throw InternalError("removal of unknown species: " + key.str());
  Count population = term.species().population_at(*index);
  if (population < 1)
    throw InternalError("removal from empty population: " + key.str());
  term.species().set_population(key, population - 1);
  apply_updates(term, key, algorithm);
}

void add_process(MachineTerm& term, const SpeciesMultiset& process,
                 const Calculus& calculus, Algorithm& algorithm) {
  for (const auto& [key, count] : process.entries())
    for (Count i = 0; i < count; ++i)
      add_species(term, key, calculus, algorithm);
}

void apply_event(MachineTerm& term, const NextEvent& event,
                 const Calculus& calculus, Algorithm& algorithm) {
  term.set_time(event.time);
  for (const auto& [key, count] : event.reaction.reactants().entries())
    for (Count i = 0; i < count; ++i) remove_species(term, key, algorithm);
  for (const auto& [key, count] : event.reaction.products().entries())
    for (Count i = 0; i < count; ++i)
      add_species(term, key, calculus, algorithm);
}

std::optional<Reaction> step(MachineTerm& term, const Calculus& calculus,
                             Algorithm& algorithm) {
  std::optional<NextEvent> event = algorithm.next(term);
  if (!event) return std::nullopt;
  apply_event(term, *event, calculus, algorithm);
  return event->reaction;
}

MachineTerm initial_term(const Calculus& calculus, Algorithm& algorithm) {
  MachineTerm term;
  add_process(term, calculus.initial_species(), calculus, algorithm);
  return term;
}

std::vector<std::string> validate(const MachineTerm& term,
                                  const Calculus& calculus,
                                  const Algorithm& algorithm) {
  std::vector<std::string> violations;

  const SpeciesMap& species = term.species();
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (species.population_at(i) < 0)
      violations.push_back("negative population for " +
                           species.key_at(i).str());
  }

  // Replay discovery over the insertion order; the table must match the
  // replayed emission sequence exactly.
  std::vector<Reaction> replayed;
  for (std::size_t i = 0; i < species.size(); ++i) {
    std::span<const SpeciesKey> existing = species.keys().subspan(0, i);
    for (Reaction& reaction :
         calculus.reactions(species.key_at(i), existing))
      replayed.push_back(std::move(reaction));
  }
  const ReactionMap& table = term.reactions();
  if (replayed.size() != table.size()) {
    violations.push_back(
        "reaction table has " + format_int(static_cast<long long>(table.size())) +
        " entries, discovery replay yields " +
        format_int(static_cast<long long>(replayed.size())));
  }
  std::size_t common = std::min(replayed.size(), table.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (!(replayed[i] == table.reaction_at(i))) {
      violations.push_back("table entry " +
                           format_int(static_cast<long long>(i)) + " is " +
                           table.reaction_at(i).str() + ", replay yields " +
                           replayed[i].str());
      break;
    }
  }

  for (std::size_t i = 0; i < table.size(); ++i) {
    for (const auto& [key, count] : table.reaction_at(i).reactants().entries()) {
      if (!species.contains(key))
        violations.push_back("reaction " + table.reaction_at(i).str() +
                             " has unknown reactant " + key.str());
    }
  }

  for (std::string& line : algorithm.audit(term))
    violations.push_back(std::move(line));

  return violations;
}

}  // namespace gsm
