#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsm/plugins.hpp"
#include "gsm/reaction.hpp"
#include "gsm/species.hpp"

namespace gsm {

// One definition instance D(a,b,...) inside a continuation, the run section,
// or a species key. Arguments are channel names once fully instantiated.
struct SpiInstance {
  std::string definition;
  std::vector<std::string> args;
  int line = 0;
  int col = 0;
};

enum class SpiPrefix { delay, send, receive };

// One guarded alternative of a definition body: a prefix (delay, send or
// receive) and the parallel composition it continues as. For sends, payload
// holds the transmitted names; for receives it holds the binders.
struct SpiBranch {
  SpiPrefix prefix = SpiPrefix::delay;
  double delay_rate = 0.0;
  std::string channel;
  std::vector<std::string> payload;
  std::vector<SpiInstance> continuation;
  int line = 0;
  int col = 0;
};

struct SpiDefinition {
  std::string name;
  std::vector<std::string> params;
  std::vector<SpiBranch> branches;
  int line = 0;
  int col = 0;
};

struct SpiProgram {
  std::vector<std::pair<std::string, double>> channels;
  std::vector<SpiDefinition> definitions;
  std::vector<SpiInstance> main;

  const SpiDefinition* find_definition(const std::string& name) const;
  std::optional<double> channel_rate(const std::string& name) const;
};

// Token-based parser for channel declarations, guarded-choice definitions
// and a run section. Scope and arity checks run after parsing so
// definitions may call each other in any order.
SpiProgram parse_spi(const std::string& text, const std::string& filename);

// Canonical key "D(a,b)"; zero-argument instances print as "D()".
SpeciesKey spi_species_key(const std::string& name,
                           const std::vector<std::string>& args);

// Multiset of a parallel composition of instances; arguments must already be
// concrete channel names.
SpeciesMultiset spi_species(const std::vector<SpiInstance>& process);

class SpiCalculus final : public Calculus {
 public:
  explicit SpiCalculus(SpiProgram program) : program_(std::move(program)) {}

  const SpiProgram& program() const { return program_; }

  SpeciesMultiset initial_species() const override;
  std::vector<Reaction> reactions(
      const SpeciesKey& key,
      std::span<const SpeciesKey> existing) const override;
  SpeciesKey make_species(const std::string& name,
                          const std::vector<std::string>& args) const override;

 private:
  SpiProgram program_;
};

}  // namespace gsm
