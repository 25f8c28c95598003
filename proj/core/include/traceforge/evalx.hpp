#pragma once
// Answer extraction via prioritized regular expressions, exact-match
// scoring, and language-forcing prompt templating for multiple-choice
// evaluation. When a prediction parses as a structured trace, extraction
// searches only the response block so scratchpad explorations never score.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "traceforge/schema.hpp"

namespace traceforge {

struct ExtractionRule {
  std::string pattern;  // ECMAScript regex with exactly one capture group
  int priority = 0;     // lower runs first; ties keep list order
  enum class Occurrence { first, last };
  Occurrence occurrence = Occurrence::last;
};

class RuleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct EvalItem {
  std::string id;
  std::string prediction_text;
  std::string gold;  // choice label or answer string; non-empty
};

struct ItemVerdict {
  std::string id;
  std::optional<std::string> extracted;  // normalized
  std::string gold;                      // normalized
  bool correct = false;
};

struct ScoreResult {
  double accuracy = 0.0;
  std::vector<ItemVerdict> verdicts;
};

// Trim; single ASCII letters are uppercased. Idempotent.
std::string normalize_answer(std::string_view answer);

// Applies rules in priority order; within a rule takes the first or last
// match per its occurrence field. Returns the normalized capture, or
// nothing when no rule matches. Throws RuleError on an empty or invalid
// rule list.
std::optional<std::string> extract_answer(std::string_view text,
                                          const std::vector<ExtractionRule>& rules,
                                          const TagSet& tags = canonical_tags());

// accuracy = correct / |items|; unextractable counts as incorrect. Items
// must be non-empty.
ScoreResult score(const std::vector<EvalItem>& items, const std::vector<ExtractionRule>& rules,
                  const TagSet& tags = canonical_tags());

// answer-is style, standalone parenthesized choice, trailing bare letter.
std::vector<ExtractionRule> default_rules();

// JSON array of {"pattern", "priority", "occurrence"} entries.
std::vector<ExtractionRule> load_rules(const std::filesystem::path& path);

// JSONL of {"id", "prediction_text", "gold"}.
std::vector<EvalItem> read_eval_items(const std::filesystem::path& path);

enum class ForcedLanguage { english, thai };

std::string_view forced_language_name(ForcedLanguage lang);

class MissingSlotError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Substitutes the template's single {lang} slot with the language name and
// appends the question (when non-empty) after a blank line. Throws
// MissingSlotError unless the template has exactly one slot.
std::string force_language_prompt(std::string_view question, ForcedLanguage lang,
                                  std::string_view template_text);

}  // namespace traceforge
