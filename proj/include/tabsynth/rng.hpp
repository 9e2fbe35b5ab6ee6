#pragma once

#include <cstdint>
#include <random>

namespace tabsynth {

// Every source of randomness in the library is an explicitly passed Rng;
// there is no global generator state.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Derives an independent stream from a base seed, so that e.g. training and
// synthesis of one run use uncorrelated draws while staying reproducible.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{seed, stream};
  return Rng(seq);
}

}  // namespace tabsynth
