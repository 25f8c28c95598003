#pragma once
// Grammar, parser, validator, and serializer for the structured-thinking
// trace format:
//
//   <thoughts>
//     <plan> <step>…</step>* </plan>
//     ( <step> <title/> <scratch_pad/> <summary/> <next_step/> </step> )*
//   </thoughts>
//   <response> … </response>
//
// The parser is a strict single-pass matcher over the fixed tag vocabulary,
// not an XML parser: traces carry no declaration, attributes, or entity
// escaping, and model output routinely contains '<' in math and code, so
// only the canonical tags are treated as markup. Tag matching is
// case-sensitive. Within a valid trace every canonical tag occurrence is
// structural; a canonical tag in an illegal position is a violation, any
// other angle-bracket text is content.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace traceforge {

// The tag vocabulary lives in one table so spellings can change without
// touching the parser.
struct TagSet {
  std::string thoughts = "thoughts";
  std::string plan = "plan";
  std::string step = "step";
  std::string title = "title";
  std::string scratch_pad = "scratch_pad";
  std::string summary = "summary";
  std::string next_step = "next_step";
  std::string response = "response";

  std::vector<std::string> all() const {
    return {thoughts, plan, step, title, scratch_pad, summary, next_step, response};
  }
};

const TagSet& canonical_tags();

struct PlanEntry {
  int index = 0;  // 1-based, contiguous
  std::string description;
  bool operator==(const PlanEntry&) const = default;
};

struct ReasoningStep {
  int index = 0;  // 1-based, contiguous; may differ from plan length
  std::string title;
  std::string scratch_pad;
  std::string summary;
  std::string next_step;
  bool operator==(const ReasoningStep&) const = default;
};

struct ThoughtTrace {
  std::vector<PlanEntry> plan;
  std::vector<ReasoningStep> steps;
  std::string response;
  bool operator==(const ThoughtTrace&) const = default;
};

enum class TraceRule {
  missing_thoughts,
  missing_response,
  duplicate_block,
  empty_plan,
  non_step_in_plan,
  bad_index_order,
  missing_step_field,
  unbalanced_tag,
  stray_text,
};

std::string_view trace_rule_name(TraceRule rule);

struct TraceViolation {
  TraceRule rule;
  size_t location = 0;  // byte offset into the input text
  std::string detail;
};

class ParseError : public std::runtime_error {
public:
  explicit ParseError(TraceViolation v);
  const TraceViolation& violation() const { return violation_; }

private:
  TraceViolation violation_;
};

class InvariantError : public std::runtime_error {
public:
  explicit InvariantError(TraceViolation v);
  const TraceViolation& violation() const { return violation_; }

private:
  TraceViolation violation_;
};

// Raised by operations whose input must first pass validate_trace.
class InvalidInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A canonical tag occurrence in raw text.
struct TagToken {
  std::string_view name;  // tag name from the TagSet
  bool closing = false;
  size_t begin = 0;  // offset of '<'
  size_t end = 0;    // offset one past '>'
};

// All canonical tag occurrences in order; other '<' text is ignored.
std::vector<TagToken> find_canonical_tags(std::string_view text,
                                          const TagSet& tags = canonical_tags());

struct ScanResult {
  std::optional<ThoughtTrace> trace;  // engaged iff violations is empty
  std::vector<TraceViolation> violations;
};

// Total on any input text: never throws, collects every detected violation.
ScanResult scan_trace(std::string_view text, const TagSet& tags = canonical_tags());

// Throws ParseError carrying the first violation.
ThoughtTrace parse_trace(std::string_view text, const TagSet& tags = canonical_tags());

// Empty iff parse_trace succeeds and every invariant holds.
std::vector<TraceViolation> validate_trace(std::string_view text,
                                           const TagSet& tags = canonical_tags());

// In-memory invariants of a ThoughtTrace (used by render_trace).
std::vector<TraceViolation> check_trace(const ThoughtTrace& t);

// Canonical serialization: fixed tag order, one newline between sibling
// blocks, field text trimmed. parse_trace(render_trace(t)) == t for traces
// whose fields carry no leading/trailing whitespace (all parser outputs do).
// Throws InvariantError if t violates ThoughtTrace invariants.
std::string render_trace(const ThoughtTrace& t, const TagSet& tags = canonical_tags());

// Number of reasoning steps; plan entries are never counted.
size_t step_count(const ThoughtTrace& t);

}  // namespace traceforge
