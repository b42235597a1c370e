#include "gsm/random.hpp"

namespace gsm {

double MtUniform::next() {
  for (;;) {
    // 53 random bits scaled to [0, 1); zero is rejected to keep the draw in
    // the open interval.
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 over base + golden-ratio stride; adjacent indices map to
  // uncorrelated engine seeds even for base 0, 1, 2, ...
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace gsm
