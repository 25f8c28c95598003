#pragma once
// Derives semi-structured and unstructured thinking formats from structured
// traces. Inner tags are replaced by words from a substitution table so the
// three formats carry the same information; canonical_text is the
// equivalence functional that maps all three to one normalized string.

#include <string>
#include <string_view>

#include "traceforge/schema.hpp"

namespace traceforge {

// Replacement words per canonical inner tag. Replacements are inserted at
// line starts; canonical_text removes them only there, never by global
// substring search, so organic mid-text occurrences survive.
struct SubstitutionTable {
  std::string plan = "Plan:";      // header line for the plan block
  std::string step = "{n}. ";      // plan entries; {n} expands to the entry number
  std::string title = "### ";
  std::string scratch_pad = "";
  std::string summary = "Summary: ";
  std::string next_step = "Next: ";
  std::string separator = "";      // thoughts/response boundary in unstructured text
};

const SubstitutionTable& default_substitution_table();

// Keeps only the two high-level tag pairs; inner structure becomes
// replacement words. Throws InvalidInputError unless the input passes
// validate_trace.
std::string to_semi_structured(std::string_view structured,
                               const SubstitutionTable& table = default_substitution_table(),
                               const TagSet& tags = canonical_tags());

// Removes every canonical tag; the thoughts/response boundary becomes the
// table's separator phrase. Throws InvalidInputError unless the input
// passes validate_trace.
std::string to_unstructured(std::string_view structured,
                            const SubstitutionTable& table = default_substitution_table(),
                            const TagSet& tags = canonical_tags());

// Strips canonical tags and line-start replacement words, collapses
// whitespace runs, trims. Total and deterministic on any text.
std::string canonical_text(std::string_view text,
                           const SubstitutionTable& table = default_substitution_table(),
                           const TagSet& tags = canonical_tags());

}  // namespace traceforge
