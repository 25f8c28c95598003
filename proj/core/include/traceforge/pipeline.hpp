#pragma once
// Two-stage LLM transformation of plain instruction/answer records into
// validated structured-thinking records: a few-shot transformation pass
// followed by validation-gated refinement rounds. Records that still fail
// validation are quarantined with their diagnostics, never dropped.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "traceforge/chat_client.hpp"
#include "traceforge/corpus.hpp"
#include "traceforge/schema.hpp"

namespace traceforge {

struct PipelineConfig {
  std::vector<std::string> transform_exemplars;  // few-shot demonstrations
  std::vector<std::string> refine_exemplars;     // same exemplars by default
  int max_refine_rounds = 2;
  int concurrency = 4;
  // The transformation already targets the structured format, so by default
  // only candidates that fail validation are refined; always_refine runs one
  // unconditional refinement pass first.
  bool always_refine = false;
  ChatParams transform_params{0.7, 4096};
  ChatParams refine_params{0.0, 4096};
  int transport_retries = 3;
  int retry_initial_delay_ms = 500;
};

struct StageTokens {
  uint64_t prompt = 0;
  uint64_t completion = 0;
};

struct PipelineReport {
  size_t accepted = 0;
  size_t quarantined = 0;
  std::map<std::string, size_t> failure_reasons;  // violation rule or "transport_error"
  StageTokens transform_tokens;
  StageTokens refine_tokens;
};

struct PipelineResult {
  Corpus accepted;
  Corpus quarantined;
  PipelineReport report;
};

// Prompt assembly is exposed so tests (and mock fixtures) can reproduce the
// exact requests. Transform prompts carry, in order: the exemplars, the
// record's instruction, its ground-truth output, and format instructions.
std::vector<ChatMessage> transform_prompt(const Record& r, const PipelineConfig& cfg);
std::vector<ChatMessage> refine_prompt(std::string_view candidate, const Record& r,
                                       const PipelineConfig& cfg);

// Single-record stage calls; transport/model errors are rethrown with the
// record id attached.
std::string transform(const Record& r, ChatClient& client, const PipelineConfig& cfg);
std::string refine(std::string_view candidate, const Record& r, ChatClient& client,
                   const PipelineConfig& cfg);

// Full run: transform -> validate -> refine rounds while invalid. Accepted
// outputs are replaced by the canonical rendering of the parsed trace.
// Output order matches input order regardless of worker scheduling, the id
// multiset is preserved across the two output corpora, and a deterministic
// client makes the whole run reproducible.
PipelineResult run_pipeline(const Corpus& corpus, ChatClient& transform_client,
                            ChatClient& refine_client, const PipelineConfig& cfg);

// Loads one exemplar per file, in the given order.
std::vector<std::string> load_exemplars(const std::vector<std::filesystem::path>& paths);

}  // namespace traceforge
