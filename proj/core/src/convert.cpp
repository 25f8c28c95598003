#include "traceforge/convert.hpp"

#include <vector>

#include "traceforge/unicode.hpp"

namespace traceforge {

const SubstitutionTable& default_substitution_table() {
  static const SubstitutionTable table;
  return table;
}

namespace {

std::string expand_step_marker(const std::string& tmpl, int n) {
  std::string out;
  size_t slot = tmpl.find("{n}");
  if (slot == std::string::npos) return tmpl;
  out = tmpl.substr(0, slot) + std::to_string(n) + tmpl.substr(slot + 3);
  return out;
}

ThoughtTrace parse_valid(std::string_view structured, const TagSet& tags) {
  ScanResult r = scan_trace(structured, tags);
  if (!r.violations.empty()) {
    throw InvalidInputError("input is not a valid structured trace: " +
                            std::string(trace_rule_name(r.violations.front().rule)) + " at offset " +
                            std::to_string(r.violations.front().location));
  }
  return std::move(*r.trace);
}

void append_block(std::string& out, const std::string& prefix, const std::string& content) {
  if (content.empty()) return;  // empty fields leave no marker behind
  out += prefix;
  out += content;
  out += '\n';
}

// Interior of the thoughts section with tags replaced by table words; shared
// by both converted formats.
std::string interior_text(const ThoughtTrace& t, const SubstitutionTable& table) {
  std::string out;
  if (!table.plan.empty()) {
    out += table.plan;
    out += '\n';
  }
  for (const PlanEntry& e : t.plan) {
    append_block(out, expand_step_marker(table.step, e.index), e.description);
  }
  for (const ReasoningStep& s : t.steps) {
    out += '\n';
    append_block(out, table.title, s.title);
    append_block(out, table.scratch_pad, s.scratch_pad);
    append_block(out, table.summary, s.summary);
    append_block(out, table.next_step, s.next_step);
  }
  return out;
}

// A line-start matcher for one replacement word. Numbered markers ("{n}. ")
// match their literal parts around one or more digits.
struct PrefixMatcher {
  std::string pre;
  std::string post;
  bool numbered = false;

  static PrefixMatcher from(const std::string& word) {
    PrefixMatcher m;
    size_t slot = word.find("{n}");
    if (slot == std::string::npos) {
      m.pre = word;
    } else {
      m.numbered = true;
      m.pre = word.substr(0, slot);
      m.post = word.substr(slot + 3);
    }
    return m;
  }

  bool empty() const { return pre.empty() && post.empty() && !numbered; }

  // Length of the match at the start of line, or 0.
  size_t match(std::string_view line) const {
    if (line.substr(0, pre.size()) != pre) return 0;
    size_t pos = pre.size();
    if (numbered) {
      size_t digits = 0;
      while (pos < line.size() && line[pos] >= '0' && line[pos] <= '9') {
        ++pos;
        ++digits;
      }
      if (digits == 0) return 0;
      if (line.substr(pos, post.size()) != post) return 0;
      pos += post.size();
    }
    return pos;
  }
};

std::vector<PrefixMatcher> matchers_for(const SubstitutionTable& table) {
  std::vector<PrefixMatcher> ms;
  for (const std::string* w : {&table.plan, &table.step, &table.title, &table.scratch_pad,
                               &table.summary, &table.next_step, &table.separator}) {
    PrefixMatcher m = PrefixMatcher::from(*w);
    if (!m.empty()) ms.push_back(std::move(m));
  }
  return ms;
}

}  // namespace

std::string to_semi_structured(std::string_view structured, const SubstitutionTable& table,
                               const TagSet& tags) {
  ThoughtTrace t = parse_valid(structured, tags);
  std::string out;
  out += "<" + tags.thoughts + ">\n";
  out += interior_text(t, table);
  out += "</" + tags.thoughts + ">\n";
  out += "<" + tags.response + ">\n";
  out += t.response;
  out += "\n</" + tags.response + ">";
  return out;
}

std::string to_unstructured(std::string_view structured, const SubstitutionTable& table,
                            const TagSet& tags) {
  ThoughtTrace t = parse_valid(structured, tags);
  std::string out = interior_text(t, table);
  out += '\n';
  if (!table.separator.empty()) {
    out += table.separator;
    out += '\n';
  }
  out += t.response;
  return out;
}

std::string canonical_text(std::string_view text, const SubstitutionTable& table,
                           const TagSet& tags) {
  // Replace every canonical tag occurrence with a newline so each content
  // span sits on its own line, mirroring the converters' layout.
  std::string flat;
  flat.reserve(text.size());
  size_t pos = 0;
  for (const TagToken& tok : find_canonical_tags(text, tags)) {
    flat.append(text.substr(pos, tok.begin - pos));
    flat.push_back('\n');
    pos = tok.end;
  }
  flat.append(text.substr(pos));

  const std::vector<PrefixMatcher> matchers = matchers_for(table);

  std::string out;
  out.reserve(flat.size());
  size_t line_start = 0;
  while (line_start <= flat.size()) {
    size_t nl = flat.find('\n', line_start);
    size_t line_end = (nl == std::string::npos) ? flat.size() : nl;
    std::string_view line(flat.data() + line_start, line_end - line_start);
    // Strip replacement words repeatedly; markers can stack when organic
    // content itself starts with one.
    bool stripped = true;
    while (stripped) {
      stripped = false;
      for (const PrefixMatcher& m : matchers) {
        size_t len = m.match(line);
        if (len > 0) {
          line.remove_prefix(len);
          stripped = true;
          break;
        }
      }
    }
    out.append(line);
    out.push_back('\n');
    if (nl == std::string::npos) break;
    line_start = nl + 1;
  }
  return collapse_whitespace(out);
}

}  // namespace traceforge
