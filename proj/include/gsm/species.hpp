#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsm/errors.hpp"

namespace gsm {

using Count = std::int64_t;

// Canonical species identity. Equality, ordering and hashing all follow the
// canonical printed form byte for byte; the calculus that mints a key is
// responsible for printing it canonically.
class SpeciesKey {
 public:
  SpeciesKey() = default;
  explicit SpeciesKey(std::string canonical) : text_(std::move(canonical)) {}

  const std::string& str() const { return text_; }

  friend bool operator==(const SpeciesKey&, const SpeciesKey&) = default;
  friend std::strong_ordering operator<=>(const SpeciesKey&,
                                          const SpeciesKey&) = default;

 private:
  std::string text_;
};

struct SpeciesKeyHash {
  std::size_t operator()(const SpeciesKey& key) const noexcept {
    return std::hash<std::string>{}(key.str());
  }
};

// Multiset of species: key -> multiplicity >= 1, absent keys meaning zero.
// Entries are kept sorted by key so that two equal multisets compare equal
// structurally and iteration order is deterministic.
class SpeciesMultiset {
 public:
  using Entry = std::pair<SpeciesKey, Count>;

  SpeciesMultiset() = default;

  // Adds n occurrences (n >= 1).
  void add(const SpeciesKey& key, Count n = 1);

  Count count(const SpeciesKey& key) const;
  bool contains(const SpeciesKey& key) const { return count(key) > 0; }

  // Sum of all multiplicities.
  Count total() const;
  std::size_t distinct() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Multiset sum: counts add.
  SpeciesMultiset plus(const SpeciesMultiset& other) const;
  // Truncated multiset difference: max(0, this - other) per key.
  SpeciesMultiset minus(const SpeciesMultiset& other) const;

  const std::vector<Entry>& entries() const { return entries_; }

  friend bool operator==(const SpeciesMultiset&,
                         const SpeciesMultiset&) = default;
  friend auto operator<=>(const SpeciesMultiset&,
                          const SpeciesMultiset&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by key
};

std::size_t hash_value(const SpeciesMultiset& multiset);

// Population map S: key -> population >= 0. Keys are never deleted once
// inserted; insertion order is preserved and drives every ordered view of the
// species set (trace columns, closure replay).
class SpeciesMap {
 public:
  bool contains(const SpeciesKey& key) const {
    return index_.find(key) != index_.end();
  }
  std::optional<std::size_t> index_of(const SpeciesKey& key) const;

  // Population of key, zero when the key is not in the domain.
  Count population(const SpeciesKey& key) const;

  // Inserts a key that must not be present yet; returns its index.
  std::size_t insert_new(const SpeciesKey& key, Count population);

  // Key must be present; population must stay >= 0.
  void set_population(const SpeciesKey& key, Count population);

  std::size_t size() const { return keys_.size(); }
  const SpeciesKey& key_at(std::size_t index) const { return keys_[index]; }
  Count population_at(std::size_t index) const { return populations_[index]; }

  // Keys in insertion order.
  std::span<const SpeciesKey> keys() const { return keys_; }

  // Populations in insertion order.
  std::vector<Count> snapshot() const { return populations_; }

 private:
  std::vector<SpeciesKey> keys_;
  std::vector<Count> populations_;
  std::unordered_map<SpeciesKey, std::size_t, SpeciesKeyHash> index_;
};

}  // namespace gsm
