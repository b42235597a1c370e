#pragma once

#include <cstdint>
#include <random>

namespace gsm {

// Source of uniform variates on the open interval (0, 1). Both endpoint
// values are excluded so log(u) and log(1/u) stay finite.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double next() = 0;
};

class MtUniform final : public UniformSource {
 public:
  explicit MtUniform(std::uint64_t seed) : engine_(seed) {}

  double next() override;

 private:
  std::mt19937_64 engine_;
};

// Decorrelated per-run seed for run `index` of an ensemble rooted at `base`.
std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index);

}  // namespace gsm
