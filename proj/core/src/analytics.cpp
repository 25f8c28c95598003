#include "traceforge/analytics.hpp"

#include "traceforge/unicode.hpp"

namespace traceforge {

size_t WhitespaceTokenizer::count(std::string_view text) const {
  return count_whitespace_tokens(text);
}

size_t CodePointTokenizer::count(std::string_view text) const {
  return count_code_points(text);
}

CorpusStats corpus_stats(const Corpus& c, const Tokenizer& tokenizer) {
  CorpusStats stats;
  stats.n_records = c.size();
  for (const Record& r : c.records) {
    stats.total_instruction_tokens += tokenizer.count(r.instruction);
    stats.total_output_tokens += tokenizer.count(r.output);
    ScanResult scan = scan_trace(r.output);
    if (scan.trace) {
      size_t steps = step_count(*scan.trace);
      stats.total_steps += steps;
      stats.max_steps = std::max(stats.max_steps, steps);
    } else {
      ++stats.unparsed_outputs;
    }
  }
  stats.total_tokens = stats.total_instruction_tokens + stats.total_output_tokens;
  if (stats.n_records > 0) {
    const double n = static_cast<double>(stats.n_records);
    stats.avg_instruction_tokens = static_cast<double>(stats.total_instruction_tokens) / n;
    stats.avg_output_tokens = static_cast<double>(stats.total_output_tokens) / n;
    stats.avg_steps = static_cast<double>(stats.total_steps) / n;
  }
  return stats;
}

namespace {

bool is_thai(uint32_t cp) { return cp >= 0x0E00 && cp <= 0x0E7F; }
bool is_latin(uint32_t cp) {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
}

}  // namespace

double script_ratio(std::string_view text, Script script) {
  uint64_t thai = 0, latin = 0;
  size_t i = 0;
  while (i < text.size()) {
    uint32_t cp = decode_utf8(text, i);
    if (cp == kInvalidCodePoint) continue;
    if (is_thai(cp)) ++thai;
    else if (is_latin(cp)) ++latin;
  }
  uint64_t denom = thai + latin;
  if (denom == 0) return 0.0;
  uint64_t wanted = (script == Script::thai) ? thai : latin;
  return static_cast<double>(wanted) / static_cast<double>(denom);
}

double thoughts_script_ratio(std::string_view trace_text, Script script, const TagSet& tags) {
  ScanResult scan = scan_trace(trace_text, tags);
  if (!scan.trace) {
    throw InvalidInputError("input is not a valid structured trace: " +
                            std::string(trace_rule_name(scan.violations.front().rule)));
  }
  std::string thoughts;
  for (const PlanEntry& e : scan.trace->plan) {
    thoughts += e.description;
    thoughts += ' ';
  }
  for (const ReasoningStep& s : scan.trace->steps) {
    thoughts += s.title;
    thoughts += ' ';
    thoughts += s.scratch_pad;
    thoughts += ' ';
    thoughts += s.summary;
    thoughts += ' ';
    thoughts += s.next_step;
    thoughts += ' ';
  }
  return script_ratio(thoughts, script);
}

}  // namespace traceforge
