#pragma once

#include <memory>

#include "gsm/machine.hpp"
#include "gsm/plugins.hpp"
#include "gsm/random.hpp"

namespace gsm {

// Mass-action propensity of a reaction under the given populations: with
// rate r this is r*S(A) for a single reactant, r*S(A)*(S(A)-1)/2 for a
// homodimerisation A + A, and r*S(A)*S(B) otherwise.
double propensity(const Reaction& reaction, const SpeciesMap& species);

// Picks the waiting time from the exponential of the total propensity and
// the reaction by linear scan over the table in insertion order. Uses two
// uniform draws per event, waiting time first.
class DirectMethod final : public Algorithm {
 public:
  explicit DirectMethod(std::unique_ptr<UniformSource> uniform)
      : uniform_(std::move(uniform)) {}

  std::vector<ReactionActivity> init(std::span<const Reaction> fresh,
                                     const MachineTerm& term) override;
  std::vector<ReactionActivity> updates(const SpeciesKey& key,
                                        const MachineTerm& term) override;
  std::optional<NextEvent> next(const MachineTerm& term) override;
  std::vector<std::string> audit(const MachineTerm& term) const override;

 private:
  std::unique_ptr<UniformSource> uniform_;
};

}  // namespace gsm
