#include "gsm/next_reaction.hpp"

#include <cmath>

#include "gsm/direct_method.hpp"
#include "gsm/errors.hpp"
#include "gsm/text.hpp"

namespace gsm {

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

}  // namespace

void IndexedTimeQueue::place(std::size_t slot, std::size_t id) {
  heap_[slot] = id;
  position_[id] = slot;
}

bool IndexedTimeQueue::before(std::size_t a, std::size_t b) const {
  if (times_[a] != times_[b]) return times_[a] < times_[b];
  return a < b;
}

void IndexedTimeQueue::push(double time) {
  std::size_t id = times_.size();
  times_.push_back(time);
  heap_.push_back(id);
  position_.push_back(heap_.size() - 1);
  sift_up(heap_.size() - 1);
}

void IndexedTimeQueue::update(std::size_t id, double time) {
  if (id >= times_.size()) throw InternalError("queue id out of range");
  times_[id] = time;
  sift_up(position_[id]);
  sift_down(position_[id]);
}

double IndexedTimeQueue::time_of(std::size_t id) const {
  if (id >= times_.size()) throw InternalError("queue id out of range");
  return times_[id];
}

std::size_t IndexedTimeQueue::min_id() const {
  if (heap_.empty()) throw InternalError("empty queue has no minimum");
  return heap_[0];
}

double IndexedTimeQueue::min_time() const { return times_[min_id()]; }

void IndexedTimeQueue::sift_up(std::size_t slot) {
  std::size_t id = heap_[slot];
  while (slot > 0) {
    std::size_t parent = (slot - 1) / 2;
    if (!before(id, heap_[parent])) break;
    place(slot, heap_[parent]);
    slot = parent;
  }
  place(slot, id);
}

void IndexedTimeQueue::sift_down(std::size_t slot) {
  std::size_t id = heap_[slot];
  for (;;) {
    std::size_t child = 2 * slot + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && before(heap_[child + 1], heap_[child]))
      ++child;
    if (!before(heap_[child], id)) break;
    place(slot, heap_[child]);
    slot = child;
  }
  place(slot, id);
}

double putative_time(double a, double t, double u) {
  if (!(a > 0.0)) return kNever;
  return t + std::log(1.0 / u) / a;
}

double rescale_putative_time(double a_old, double a_new, double t,
                             double tau_old) {
  if (!(a_old > 0.0) || !(a_new > 0.0))
    throw InternalError("rescale requires positive propensities");
  if (!(tau_old >= t))
    throw InternalError("pending time behind the clock");
  return t + (a_old / a_new) * (tau_old - t);
}

std::vector<ReactionActivity> NextReactionMethod::init(
    std::span<const Reaction> fresh, const MachineTerm& term) {
  // Queue ids mirror reaction table positions; init precedes the append of
  // these entries, so the queue and table sizes must agree here.
  if (queue_.size() != term.reactions().size())
    throw InternalError("scheduler out of step with reaction table");
  std::vector<ReactionActivity> entries;
  entries.reserve(fresh.size());
  for (const Reaction& reaction : fresh) {
    double a = propensity(reaction, term.species());
    double tau = a > 0.0 ? putative_time(a, term.time(), uniform_->next())
                         : kNever;
    queue_.push(tau);
    entries.push_back(ReactionActivity{reaction, NrmActivity{a, tau}});
  }
  return entries;
}

std::vector<ReactionActivity> NextReactionMethod::updates(
    const SpeciesKey& key, const MachineTerm& term) {
  std::vector<ReactionActivity> entries;
  const ReactionMap& table = term.reactions();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Reaction& reaction = table.reaction_at(i);
    if (!reaction.has_reactant(key)) continue;
    const auto& stored = std::get<NrmActivity>(table.activity_at(i));
    double a_new = propensity(reaction, term.species());
    double tau;
    if (!(a_new > 0.0)) {
      tau = kNever;
      if (last_fired_ == i) last_fired_.reset();
    } else if (last_fired_ == i) {
      // The reaction that just fired spent its pending time; draw anew.
      tau = putative_time(a_new, term.time(), uniform_->next());
      last_fired_.reset();
    } else if (stored.propensity > 0.0) {
      tau = rescale_putative_time(stored.propensity, a_new, term.time(),
                                  stored.firing_time);
    } else {
      tau = putative_time(a_new, term.time(), uniform_->next());
    }
    queue_.update(i, tau);
    entries.push_back(ReactionActivity{reaction, NrmActivity{a_new, tau}});
  }
  return entries;
}

std::optional<NextEvent> NextReactionMethod::next(const MachineTerm& term) {
  if (queue_.empty()) return std::nullopt;
  std::size_t id = queue_.min_id();
  double tau = queue_.time_of(id);
  if (tau == kNever) return std::nullopt;
  last_fired_ = id;
  return NextEvent{term.reactions().reaction_at(id), tau};
}

std::vector<std::string> NextReactionMethod::audit(
    const MachineTerm& term) const {
  std::vector<std::string> report;
  const ReactionMap& table = term.reactions();
  if (queue_.size() != table.size()) {
    report.push_back("queue holds " +
                     format_int(static_cast<long long>(queue_.size())) +
                     " entries for a table of " +
                     format_int(static_cast<long long>(table.size())));
    return report;
  }
  std::optional<std::size_t> scan_min;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Reaction& reaction = table.reaction_at(i);
    const auto* activity = std::get_if<NrmActivity>(&table.activity_at(i));
    if (!activity) {
      report.push_back("foreign activity attached to " + reaction.str());
      continue;
    }
    double expected = propensity(reaction, term.species());
    double tolerance = 1e-12 * std::max(std::abs(expected),
                                        std::abs(activity->propensity));
    if (std::abs(expected - activity->propensity) > tolerance)
      report.push_back("stale propensity for " + reaction.str() + ": stored " +
                       format_double(activity->propensity) + ", expected " +
                       format_double(expected));
    bool never = activity->firing_time == kNever;
    if (never != !(activity->propensity > 0.0))
      report.push_back("pending time and propensity disagree for " +
                       reaction.str());
    if (!never && !(activity->firing_time >= term.time()))
      report.push_back("pending time behind the clock for " + reaction.str());
    if (queue_.time_of(i) != activity->firing_time)
      report.push_back("queue key diverges from stored time for " +
                       reaction.str());
    if (!scan_min || activity->firing_time <
                         std::get<NrmActivity>(table.activity_at(*scan_min))
                             .firing_time)
      scan_min = i;
  }
  // The scan keeps the first index achieving the minimum, which is exactly
  // the heap's (time, id) tie-break.
  if (scan_min && queue_.min_id() != *scan_min)
    report.push_back("heap minimum diverges from table scan");
  return report;
}

}  // namespace gsm
