#pragma once
// Portable deterministic randomness.
//
// Every seeded operation in the toolkit draws from SplitMix64 rather than
// <random> engines + distributions: the engine is fully specified, and the
// bounded-draw / bernoulli helpers below avoid the implementation-defined
// behavior of std::uniform_int_distribution. Same seed, same bytes, on any
// platform.

#include <cstdint>
#include <string_view>
#include <unordered_set>
#include <algorithm>
#include <vector>

namespace traceforge {

class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, n). n must be nonzero.
  uint64_t uniform_below(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // True with probability p; p outside [0,1] is clamped. Always consumes
  // exactly one draw so call sites keep a stable stream layout.
  bool bernoulli(double p) {
    double u = next_double();
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return u < p;
  }

private:
  uint64_t state_;
};

inline uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Independent stream per (seed, key). Keyed streams keep corpus-level
// parallelism and spec reordering from changing any individual sample.
inline SplitMix64 derive_stream(uint64_t seed, std::string_view key) {
  SplitMix64 mix(seed ^ fnv1a64(key));
  return SplitMix64(mix.next_u64());
}

// Robert Floyd's sampling: k distinct indices from [0, n), returned in
// ascending order. k > n degenerates to the full range.
inline std::vector<size_t> sample_indices(SplitMix64& rng, size_t n, size_t k) {
  if (k >= n) {
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  std::unordered_set<uint64_t> chosen;
  chosen.reserve(k * 2);
  for (uint64_t j = n - k; j < n; ++j) {
    uint64_t r = rng.uniform_below(j + 1);
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  std::vector<size_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace traceforge
