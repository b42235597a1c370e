#pragma once

#include <memory>
#include <string>

#include "gsm/plugins.hpp"

namespace gsm {

enum class ModelKind { crn, spi, multi };

struct LoadedModel {
  ModelKind kind;
  std::unique_ptr<Calculus> calculus;
  std::string source_path;
};

// Chooses the parser by file extension: .crn, .spi or .multi.
LoadedModel load_model(const std::string& path);

}  // namespace gsm
