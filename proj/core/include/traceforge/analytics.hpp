#pragma once
// Corpus-level measurements: token statistics, step statistics, and
// script-composition ratios (Thai vs Latin characters).

#include <cstdint>
#include <string_view>

#include "traceforge/corpus.hpp"
#include "traceforge/schema.hpp"

namespace traceforge {

class Tokenizer {
public:
  virtual ~Tokenizer() = default;
  // Deterministic; count("") == 0.
  virtual size_t count(std::string_view text) const = 0;
};

class WhitespaceTokenizer : public Tokenizer {
public:
  size_t count(std::string_view text) const override;
};

class CodePointTokenizer : public Tokenizer {
public:
  size_t count(std::string_view text) const override;
};

struct CorpusStats {
  size_t n_records = 0;
  uint64_t total_instruction_tokens = 0;
  uint64_t total_output_tokens = 0;
  uint64_t total_tokens = 0;  // instruction + output
  double avg_instruction_tokens = 0.0;
  double avg_output_tokens = 0.0;
  size_t max_steps = 0;
  uint64_t total_steps = 0;
  double avg_steps = 0.0;
  size_t unparsed_outputs = 0;  // outputs counted as 0 steps
};

// Averages are totals / n_records in one division, so they carry no
// incremental-rounding drift and are invariant under record reordering.
CorpusStats corpus_stats(const Corpus& c, const Tokenizer& tokenizer);

enum class Script { thai, latin };

// (characters of the requested script) / (thai + latin characters), where
// thai is U+0E00..U+0E7F and latin is A-Z a-z; every other character is
// excluded from both sides. 0 when the denominator is 0.
double script_ratio(std::string_view text, Script script);

// script_ratio over the thoughts content only (plan and step text; the
// structural tags themselves never count). Throws InvalidInputError unless
// the text passes validate_trace.
double thoughts_script_ratio(std::string_view trace_text, Script script,
                             const TagSet& tags = canonical_tags());

}  // namespace traceforge
