#pragma once
// Assembly, filtering, downsampling, and leave-one-out ablation of
// multi-domain data mixtures. A mixture spec names its sub-dataset parts;
// each part is read, optionally rating-filtered, then sampled uniformly
// without replacement from its own seeded stream.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "traceforge/corpus.hpp"

namespace traceforge {

struct MixturePart {
  std::string name;  // unique within a spec; keys the part's RNG stream
  std::string domain;
  std::filesystem::path source_path;
  std::optional<size_t> target_count;
  std::optional<double> rating_filter;
};

struct MixtureSpec {
  std::vector<MixturePart> parts;
  uint64_t seed = 0;
};

// The downsampling percentages studied as named presets.
inline constexpr std::array<int, 5> kDownsamplePresets{75, 50, 25, 10, 5};

class MixtureSpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnknownDomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FilterReport {
  size_t kept = 0;
  size_t dropped_below = 0;
  size_t dropped_missing_rating = 0;
};

// Keeps records with rating strictly greater than threshold, order
// preserved. Records without a rating are dropped and counted.
Corpus filter_by_rating(const Corpus& c, double threshold, FilterReport* report = nullptr);

// Each part's target_count becomes floor(percent/100 * count); 100 is the
// identity. percent must lie in [1,100]; every part needs a target_count.
MixtureSpec downsample(const MixtureSpec& spec, int percent);

// Removes every part of the given domain; throws UnknownDomainError if the
// spec has none.
MixtureSpec leave_one_out(const MixtureSpec& spec, Domain domain);

struct PartReport {
  std::string name;
  std::string domain;
  size_t read = 0;
  size_t after_filter = 0;
  size_t dropped_missing_rating = 0;
  size_t sampled = 0;
};

struct AssembleReport {
  std::vector<PartReport> parts;
  size_t total = 0;
};

// Reads, filters, and samples each part (stream keyed by (seed, part name)),
// then concatenates in spec order. Deterministic for a fixed spec. Throws
// on I/O failure or a target_count exceeding the available records.
Corpus assemble(const MixtureSpec& spec, AssembleReport* report = nullptr);

// Key-value config with repeated [part] sections:
//
//   seed = 42
//   [part]
//   name = MATH
//   domain = mathematics
//   source = data/math.jsonl
//   count = 7500
//   rating_filter = 4.25   (optional)
//
// Relative source paths resolve against the spec file's directory.
MixtureSpec read_mixture_spec(const std::filesystem::path& path);

}  // namespace traceforge
