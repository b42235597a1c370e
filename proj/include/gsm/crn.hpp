#pragma once

#include <string>
#include <vector>

#include "gsm/plugins.hpp"
#include "gsm/reaction.hpp"
#include "gsm/species.hpp"

namespace gsm {

// Flat reaction network over named species: a fixed reaction table plus an
// initial population multiset.
struct CrnModel {
  std::vector<Reaction> table;
  SpeciesMultiset initial;
};

// Line-oriented parser; `#` starts a comment, `;` separates statements on
// one line. Statements are reactions "A + B ->{rate} C ..." (products may be
// empty) and "init <species> <count>" lines, which accumulate.
CrnModel parse_crn(const std::string& text, const std::string& filename);

// Canonical text form; parse and print are mutually idempotent.
std::string print_crn(const CrnModel& model);

class CrnCalculus final : public Calculus {
 public:
  explicit CrnCalculus(CrnModel model) : model_(std::move(model)) {}

  const CrnModel& model() const { return model_; }

  SpeciesMultiset initial_species() const override { return model_.initial; }
  std::vector<Reaction> reactions(
      const SpeciesKey& key,
      std::span<const SpeciesKey> existing) const override;
  SpeciesKey make_species(const std::string& name,
                          const std::vector<std::string>& args) const override;

 private:
  CrnModel model_;
};

}  // namespace gsm
