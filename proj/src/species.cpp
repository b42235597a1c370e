#include "gsm/species.hpp"

#include <algorithm>

namespace gsm {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

}  // namespace

void SpeciesMultiset::add(const SpeciesKey& key, Count n) {
  if (n < 1) throw InternalError("multiset multiplicity must be >= 1");
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const Entry& e, const SpeciesKey& k) { return e.first < k; });
  if (it != entries_.end() && it->first == key) {
    it->second += n;
  } else {
    entries_.insert(it, Entry{key, n});
  }
}

Count SpeciesMultiset::count(const SpeciesKey& key) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const Entry& e, const SpeciesKey& k) { return e.first < k; });
  if (it != entries_.end() && it->first == key) return it->second;
  return 0;
}

Count SpeciesMultiset::total() const {
  Count sum = 0;
  for (const Entry& e : entries_) sum += e.second;
  return sum;
}

SpeciesMultiset SpeciesMultiset::plus(const SpeciesMultiset& other) const {
  SpeciesMultiset out = *this;
  for (const Entry& e : other.entries_) out.add(e.first, e.second);
  return out;
}

SpeciesMultiset SpeciesMultiset::minus(const SpeciesMultiset& other) const {
  SpeciesMultiset out;
  for (const Entry& e : entries_) {
    Count remaining = e.second - other.count(e.first);
    if (remaining > 0) out.add(e.first, remaining);
  }
  return out;
}

std::size_t hash_value(const SpeciesMultiset& multiset) {
  std::size_t seed = multiset.entries().size();
  for (const auto& [key, count] : multiset.entries()) {
    seed = mix(seed, SpeciesKeyHash{}(key));
    seed = mix(seed, static_cast<std::size_t>(count));
  }
  return seed;
}

std::optional<std::size_t> SpeciesMap::index_of(const SpeciesKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Count SpeciesMap::population(const SpeciesKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? 0 : populations_[it->second];
}

std::size_t SpeciesMap::insert_new(const SpeciesKey& key, Count population) {
  if (population < 0) throw InternalError("population must be >= 0");
  auto [it, inserted] = index_.emplace(key, keys_.size());
  if (!inserted) throw InternalError("species already present: " + key.str());
  keys_.push_back(key);
  populations_.push_back(population);
  return it->second;
}

void SpeciesMap::set_population(const SpeciesKey& key, Count population) {
  if (population < 0)
    throw InternalError("population underflow for species " + key.str());
  auto it = index_.find(key);
  if (it == index_.end())
    throw InternalError("species not in domain: " + key.str());
  populations_[it->second] = population;
}

}  // namespace gsm
