#pragma once
// Converts step-rated reasoning problems (per-step candidate completions
// labeled correct/incorrect) into complete structured-thinking responses
// that exhibit self-correction: an incorrect step, a reflection on it, then
// a resampled correct step.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "traceforge/corpus.hpp"

namespace traceforge {

struct PrmCandidate {
  std::string text;
  bool correct = false;
};

struct PrmStep {
  std::vector<PrmCandidate> candidates;  // at least one labeled correct
};

struct PrmProblem {
  std::string id;  // seeds the per-problem RNG stream
  std::string problem;
  std::string gold_answer;
  std::vector<PrmStep> steps;
};

struct SynthConfig {
  double p_incorrect = 0.5;
  uint64_t seed = 0;
  // Each template carries one {step} slot for the rejected step text.
  std::vector<std::string> reflection_templates;
};

const std::vector<std::string>& default_reflection_templates();
SynthConfig default_synth_config();

class PrmInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Emits a structured trace. Per step, with probability p_incorrect (and if
// an incorrect candidate exists) the output contains the triple
// incorrect -> reflection -> correct; otherwise a correct candidate alone.
// The resample draws from correct candidates only, so at most one
// reflection per step and no unbounded loops. Pure function of (p, cfg):
// the RNG stream is derived from (cfg.seed, p.id). Throws PrmInputError on
// malformed input.
std::string synthesize_response(const PrmProblem& p, const SynthConfig& cfg);

// JSONL input: {"id","problem","gold_answer","steps":[{"candidates":
// [{"text","label":"correct"|"incorrect"}]}]}. Throws PrmInputError /
// JsonlError with the offending line number.
std::vector<PrmProblem> read_prm_jsonl(const std::filesystem::path& path);

// Batch helper: one Record per problem (instruction = problem text,
// output = synthesized trace).
Corpus synthesize_corpus(const std::vector<PrmProblem>& problems, const SynthConfig& cfg,
                         const std::string& domain = "mathematics",
                         const std::string& source = "prm");

}  // namespace traceforge
