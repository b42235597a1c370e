#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsm/reaction.hpp"
#include "gsm/species.hpp"

namespace gsm {

class MachineTerm;

struct NextEvent {
  Reaction reaction;
  double time = 0.0;
};

struct ReactionActivity {
  Reaction reaction;
  Activity activity;
};

// A calculus supplies the initial process and, on demand, the reactions a
// newly discovered species can take part in. The machine core never inspects
// species internals; keys are opaque canonical strings.
class Calculus {
 public:
  virtual ~Calculus() = default;

  virtual SpeciesMultiset initial_species() const = 0;

  // All reactions involving `key` whose other reactants are drawn from
  // `existing` (the species known before `key` appeared) or `key` itself.
  // Each returned reaction must list `key` among its reactants. Emission
  // order must be deterministic given (key, existing).
  virtual std::vector<Reaction> reactions(
      const SpeciesKey& key, std::span<const SpeciesKey> existing) const = 0;

  // Canonical key for a named species; `args` is empty for plain names.
  virtual SpeciesKey make_species(
      const std::string& name, const std::vector<std::string>& args) const = 0;

  // Name used for output columns. Defaults to the canonical key text.
  virtual std::string display_name(const SpeciesKey& key) const {
    return key.str();
  }
};

// A simulation algorithm owns the scheduling state attached to each reaction
// and the randomness used to pick events. The machine core calls init for
// reactions discovered by a new species, updates after a population change,
// and next to learn which reaction fires and when.
class Algorithm {
 public:
  virtual ~Algorithm() = default;

  // Activities for reactions never seen before, in emission order. The core
  // appends them to the reaction table in exactly this order.
  virtual std::vector<ReactionActivity> init(std::span<const Reaction> fresh,
                                             const MachineTerm& term) = 0;

  // Revised activities for the existing reactions affected by a change in
  // the population of `key`. Applied as an override of the stored entries.
  virtual std::vector<ReactionActivity> updates(const SpeciesKey& key,
                                                const MachineTerm& term) = 0;

  // The next event, or nullopt when no reaction can fire.
  virtual std::optional<NextEvent> next(const MachineTerm& term) = 0;

  // Internal-consistency report for diagnostics; empty means healthy.
  virtual std::vector<std::string> audit(const MachineTerm& term) const {
    (void)term;
    return {};
  }
};

}  // namespace gsm
