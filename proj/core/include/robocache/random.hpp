#pragma once

#include <cstdint>
#include <random>

namespace robocache {

// mt19937_64 is fully specified by the standard, so seeded streams are
// identical across toolchains. Distributions are derived by hand below for
// the same reason.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Independent generator for one stream (e.g. one robot) of a seeded run.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace robocache
