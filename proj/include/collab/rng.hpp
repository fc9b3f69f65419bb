#pragma once

// Keyed random substreams. Every draw in a run comes from a stream derived
// from (seed, domain, keys...), so adding a node or switching the aggregation
// semantics never perturbs anybody else's draws.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace collab {

enum class StreamDomain : std::uint64_t { Sense = 1, Link = 2 };

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

// Portable draws on top of mt19937_64: the standard distributions are
// implementation-defined, the engine is not.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
  }

 private:
  std::mt19937_64 engine_;
};

inline RandomStream substream(std::uint64_t seed, StreamDomain domain,
                              std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix_keys({seed, static_cast<std::uint64_t>(domain)});
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return RandomStream(h);
}

// Per-node, per-session stream used for perception draws.
inline RandomStream sense_stream(std::uint64_t seed, std::uint32_t node, std::uint64_t session) {
  return substream(seed, StreamDomain::Sense, {node, session});
}

}  // namespace collab
