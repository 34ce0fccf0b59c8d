#pragma once

#include <cstdint>
#include <random>

namespace objmot {

using Rng = std::mt19937_64;

/// What a derived random stream is used for. Values are part of the
/// reproducibility contract; never renumber.
enum class StreamTag : std::uint64_t {
  scene = 1,
  trajectory = 2,
  ood = 3,
  tracker = 4,
  test = 99,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed derivation: every (seed, sequence, object, tag) tuple
/// yields an independent stream, so any sequence can be regenerated alone.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t sequence,
                                std::uint64_t object = 0,
                                StreamTag tag = StreamTag::scene) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ sequence);
  h = splitmix64(h ^ (object * 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
  return h;
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t sequence,
                    std::uint64_t object = 0,
                    StreamTag tag = StreamTag::scene) {
  return Rng(split_seed(seed, sequence, object, tag));
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace objmot
