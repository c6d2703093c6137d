#pragma once

#include <cstdint>
#include <random>

namespace kdisj::detail {

// Engine for the draw sequence of a training run, independent of the engine
// seeded directly with `seed` for initialization.
inline std::mt19937_64 draw_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 1u};
  return std::mt19937_64(seq);
}

}  // namespace kdisj::detail
