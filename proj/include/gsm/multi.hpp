#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gsm/plugins.hpp"
#include "gsm/reaction.hpp"
#include "gsm/species.hpp"

namespace gsm {

// Hosts several calculi side by side. Species carry a "tag::" prefix naming
// their calculus; discovery dispatches to the owning plugin over the
// same-tag subset of known species, then adds the cross-calculus bridge
// reactions that become complete when the new species appears.
class MultiRuntime final : public Calculus {
 public:
  void register_calculus(const std::string& tag,
                         std::unique_ptr<Calculus> plugin);
  void add_bridge(const Reaction& reaction);

  const std::vector<Reaction>& bridge() const { return bridge_; }
  std::vector<std::string> tags() const;

  SpeciesMultiset initial_species() const override;
  std::vector<Reaction> reactions(
      const SpeciesKey& key,
      std::span<const SpeciesKey> existing) const override;
  // `name` must be "tag::inner"; args go to the owning plugin.
  SpeciesKey make_species(const std::string& name,
                          const std::vector<std::string>& args) const override;
  // With a single calculus and no bridge the runtime is transparent, so
  // columns drop their tag and match the plugin run exactly.
  std::string display_name(const SpeciesKey& key) const override;

  static std::pair<std::string, std::string> split_tag(const SpeciesKey& key);

 private:
  struct Entry {
    std::string tag;
    std::unique_ptr<Calculus> plugin;
  };

  const Entry& entry_for(const std::string& tag) const;

  std::vector<Entry> entries_;
  std::vector<Reaction> bridge_;
};

// Loads a sectioned model file: one "[calculus TAG PATH]" line per plugin
// (path relative to the file, kind by extension) and a "[bridge]" section
// whose rows are reactions over tagged species.
std::unique_ptr<MultiRuntime> parse_multi(const std::string& path);

}  // namespace gsm
