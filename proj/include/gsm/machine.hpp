#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsm/plugins.hpp"
#include "gsm/reaction.hpp"
#include "gsm/species.hpp"

namespace gsm {

// Simulation state: the clock, the species population map, and the reaction
// table with per-reaction scheduling state. Species and reactions are only
// ever added, never removed; a species whose population reaches zero stays
// in the map so its reactions keep their table slots.
class MachineTerm {
 public:
  double time() const { return time_; }
  void set_time(double t);

  const SpeciesMap& species() const { return species_; }
  SpeciesMap& species() { return species_; }

  const ReactionMap& reactions() const { return reactions_; }
  ReactionMap& reactions() { return reactions_; }

 private:
  double time_ = 0.0;
  SpeciesMap species_;
  ReactionMap reactions_;
};

// One occurrence of `key` joins the term: either a first appearance, which
// triggers reaction discovery against the previously known species, or an
// increment followed by activity updates.
void add_species(MachineTerm& term, const SpeciesKey& key,
                 const Calculus& calculus, Algorithm& algorithm);

// One occurrence of `key` leaves the term. The key must currently have a
// positive population; it remains in the domain afterwards.
void remove_species(MachineTerm& term, const SpeciesKey& key,
                    Algorithm& algorithm);

// Adds every occurrence in `process`, cheapest species first (multiset
// order), one occurrence at a time.
void add_process(MachineTerm& term, const SpeciesMultiset& process,
                 const Calculus& calculus, Algorithm& algorithm);

// Advances the clock to `event.time`, removes the reactants one occurrence
// at a time, then adds the products. Product species unseen so far are
// discovered against the post-removal state.
void apply_event(MachineTerm& term, const NextEvent& event,
                 const Calculus& calculus, Algorithm& algorithm);

// Asks the algorithm for the next event and applies it. Returns the fired
// reaction, or nullopt when the term is deadlocked (term unchanged).
std::optional<Reaction> step(MachineTerm& term, const Calculus& calculus,
                             Algorithm& algorithm);

// Term at time zero holding the calculus's initial process.
MachineTerm initial_term(const Calculus& calculus, Algorithm& algorithm);

// Cross-checks the term against the calculus and algorithm: populations are
// nonnegative, the reaction table matches a replay of discovery over the
// species insertion order, every reactant is a known species, and the
// algorithm's own audit is clean. Returns human-readable violations.
std::vector<std::string> validate(const MachineTerm& term,
                                  const Calculus& calculus,
                                  const Algorithm& algorithm);

}  // namespace gsm
