#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "gsm/machine.hpp"
#include "gsm/plugins.hpp"
#include "gsm/random.hpp"

namespace gsm {

// Binary min-heap over (time, id) with positional lookup so an entry's key
// can be changed in place. Ties on time resolve to the smaller id, which for
// the scheduler below means earlier table position.
class IndexedTimeQueue {
 public:
  // Appends entry `id == size()`; ids are dense and never removed.
  void push(double time);
  void update(std::size_t id, double time);

  double time_of(std::size_t id) const;
  std::size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }

  // Id holding the smallest (time, id); queue must be nonempty.
  std::size_t min_id() const;
  double min_time() const;

 private:
  bool before(std::size_t a, std::size_t b) const;
  void sift_up(std::size_t slot);
  void sift_down(std::size_t slot);
  void place(std::size_t slot, std::size_t id);

  std::vector<std::size_t> heap_;      // slot -> id
  std::vector<std::size_t> position_;  // id -> slot
  std::vector<double> times_;          // id -> key
};

// Waiting time for a reaction with propensity `a` drawn at clock `t` from
// uniform variate `u`; +inf when the propensity is zero.
double putative_time(double a, double t, double u);

// Reuses an existing firing time after the propensity changes from a_old to
// a_new without consuming randomness. Requires both positive and
// tau_old >= t.
double rescale_putative_time(double a_old, double a_new, double t,
                             double tau_old);

// Keeps one tentative absolute firing time per reaction and fires the
// earliest. Fresh draws happen on discovery, for the reaction that just
// fired, and when a propensity rises from zero; other propensity changes
// rescale the pending time. One uniform draw per fresh time; a reaction
// going quiet costs nothing.
class NextReactionMethod final : public Algorithm {
 public:
  explicit NextReactionMethod(std::unique_ptr<UniformSource> uniform)
      : uniform_(std::move(uniform)) {}

  std::vector<ReactionActivity> init(std::span<const Reaction> fresh,
                                     const MachineTerm& term) override;
  std::vector<ReactionActivity> updates(const SpeciesKey& key,
                                        const MachineTerm& term) override;
  std::optional<NextEvent> next(const MachineTerm& term) override;
  std::vector<std::string> audit(const MachineTerm& term) const override;

 private:
  std::unique_ptr<UniformSource> uniform_;
  IndexedTimeQueue queue_;
  // Reaction whose time must be redrawn rather than rescaled on its first
  // update after firing.
  std::optional<std::size_t> last_fired_;
};

}  // namespace gsm
