#pragma once
// LLM-driven translation of structured long-thinking records with strict
// post-processing: boilerplate prefixes are stripped, translated
// instructions must stay tag-free, and translated outputs must preserve the
// source's canonical tag multiset and still parse. Only records passing
// every check are accepted.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "traceforge/chat_client.hpp"
#include "traceforge/corpus.hpp"
#include "traceforge/schema.hpp"

namespace traceforge {

enum class TranslationStatus {
  accepted,
  rejected_prefix_unremovable,
  rejected_tags_in_instruction,
  rejected_tag_mismatch,
  rejected_transport,
};

std::string_view translation_status_name(TranslationStatus s);

struct TranslationVerdict {
  TranslationStatus status = TranslationStatus::rejected_transport;
  std::optional<Record> cleaned;  // engaged iff status == accepted
};

struct RawTranslation {
  std::string instruction;
  std::string output;
};

std::vector<std::string> default_prefix_patterns();

struct TranslateOptions {
  std::string language = "Thai";
  std::string source_language = "English";
  // Regexes matched against the single line preceding the first canonical
  // tag; a match makes the prefix strippable.
  std::vector<std::string> prefix_patterns = default_prefix_patterns();
  // Template with one {text} slot; {lang} occurrences become the target
  // language.
  std::string prompt_template;
  int concurrency = 4;
  int transport_retries = 3;
  int retry_initial_delay_ms = 500;
  ChatParams params{0.0, 8192};
};

// The assembled translator prompt for one piece of text.
std::string translator_prompt(std::string_view text, const TranslateOptions& options);

// Translates instruction and output in separate calls (separate calls keep
// the tag accounting per field). Transport errors carry the record id.
RawTranslation translate_record(const Record& r, ChatClient& client,
                                const TranslateOptions& options);

// Removes one leading boilerplate line (per the pattern list) sitting
// before the first canonical tag; identity otherwise; idempotent.
std::string strip_translation_prefix(
    std::string_view text, const std::vector<std::string>& patterns = default_prefix_patterns(),
    const TagSet& tags = canonical_tags());

// Fixed pipeline: strip output prefix -> reject tags in the instruction ->
// reject tag-multiset mismatches or structural breakage. Accepted verdicts
// carry a cleaned Record (same id/domain/source, translated fields, meta
// notes the languages).
TranslationVerdict postprocess(const RawTranslation& raw, const Record& original,
                               const TranslateOptions& options = {},
                               const TagSet& tags = canonical_tags());

struct TranslateReport {
  size_t accepted = 0;
  size_t rejected = 0;
  std::map<std::string, size_t> by_status;
};

struct TranslateResult {
  Corpus accepted;
  Corpus rejected;  // rejected records keep their original text plus diagnostics
  TranslateReport report;
};

// Batch driver with the same bounded-worker, order-preserving contract as
// the transformation pipeline.
TranslateResult run_translation(const Corpus& corpus, ChatClient& client,
                                const TranslateOptions& options);

// Reads a prompt template file; must contain the {text} slot.
std::string load_prompt_template(const std::filesystem::path& path);

}  // namespace traceforge
