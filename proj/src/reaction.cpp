#include "gsm/reaction.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "gsm/errors.hpp"
#include "gsm/text.hpp"

namespace gsm {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

void append_side(std::string& out, const SpeciesMultiset& side) {
  bool first = true;
  for (const auto& [key, count] : side.entries()) {
    for (Count i = 0; i < count; ++i) {
      if (!first) out += " + ";
      out += key.str();
      first = false;
    }
  }
}

}  // namespace

Reaction::Reaction(SpeciesMultiset reactants, double rate,
                   SpeciesMultiset products)
    : reactants_(std::move(reactants)),
      rate_(rate),
      products_(std::move(products)) {
  if (!std::isfinite(rate_) || rate_ <= 0.0)
    throw std::invalid_argument("reaction rate must be positive and finite");
  Count arity = reactants_.total();
  if (arity < 1 || arity > 2)
    throw std::invalid_argument(
        "reaction must have one or two reactant occurrences");
}

std::string Reaction::str() const {
  std::string out;
  append_side(out, reactants_);
  out += " ->{" + format_double(rate_) + "}";
  if (!products_.empty()) {
    out += " ";
    append_side(out, products_);
  }
  return out;
}

std::size_t ReactionHash::operator()(const Reaction& r) const {
  std::size_t seed = hash_value(r.reactants());
  seed = mix(seed, hash_value(r.products()));
  seed = mix(seed, static_cast<std::size_t>(
                       std::bit_cast<std::uint64_t>(r.rate())));
  return seed;
}

double propensity_of(const Activity& activity) {
  if (const auto* d = std::get_if<DirectActivity>(&activity))
    return d->propensity;
  return std::get<NrmActivity>(activity).propensity;
}

std::size_t ReactionMap::append(const Reaction& reaction,
                                const Activity& activity) {
  auto [it, inserted] = index_.emplace(reaction, reactions_.size());
  if (!inserted)
    throw InternalError("duplicate reaction in table: " + reaction.str());
  reactions_.push_back(reaction);
  activities_.push_back(activity);
  return it->second;
}

std::optional<std::size_t> ReactionMap::index_of(
    const Reaction& reaction) const {
  auto it = index_.find(reaction);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Reaction& ReactionMap::reaction_at(std::size_t index) const {
  if (index >= reactions_.size())
    throw InternalError("reaction index out of range");
  return reactions_[index];
}

const Activity& ReactionMap::activity_at(std::size_t index) const {
  if (index >= activities_.size())
    throw InternalError("reaction index out of range");
  return activities_[index];
}

void ReactionMap::set_activity(std::size_t index, const Activity& activity) {
  if (index >= activities_.size())
    throw InternalError("reaction index out of range");
  activities_[index] = activity;
}

}  // namespace gsm
