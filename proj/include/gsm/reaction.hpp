#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gsm/species.hpp"

namespace gsm {

// A reaction in normal form: reactant multiset with total multiplicity 1 or
// 2, a positive finite rate constant, and a product multiset (may be empty).
class Reaction {
 public:
  Reaction(SpeciesMultiset reactants, double rate, SpeciesMultiset products);

  const SpeciesMultiset& reactants() const { return reactants_; }
  double rate() const { return rate_; }
  const SpeciesMultiset& products() const { return products_; }

  bool has_reactant(const SpeciesKey& key) const {
    return reactants_.contains(key);
  }

  // "A + B ->{0.5} C", reactants and products expanded by multiplicity.
  std::string str() const;

  bool operator==(const Reaction& other) const = default;

 private:
  SpeciesMultiset reactants_;
  double rate_;
  SpeciesMultiset products_;
};

struct ReactionHash {
  std::size_t operator()(const Reaction& r) const;
};

struct DirectActivity {
  double propensity = 0.0;
};

struct NrmActivity {
  double propensity = 0.0;
  double firing_time = 0.0;
};

using Activity = std::variant<DirectActivity, NrmActivity>;

double propensity_of(const Activity& activity);

// Insertion-ordered reaction table with attached scheduling state. Every
// iteration over reactions in the machine goes through this order, which is
// what makes runs reproducible.
class ReactionMap {
 public:
  std::size_t append(const Reaction& reaction, const Activity& activity);

  std::optional<std::size_t> index_of(const Reaction& reaction) const;
  bool contains(const Reaction& reaction) const {
    return index_of(reaction).has_value();
  }

  const Reaction& reaction_at(std::size_t index) const;
  const Activity& activity_at(std::size_t index) const;
  void set_activity(std::size_t index, const Activity& activity);

  std::size_t size() const { return reactions_.size(); }
  bool empty() const { return reactions_.empty(); }

 private:
  std::vector<Reaction> reactions_;
  std::vector<Activity> activities_;
  std::unordered_map<Reaction, std::size_t, ReactionHash> index_;
};

}  // namespace gsm
