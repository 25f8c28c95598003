#include "traceforge/schema.hpp"

#include <array>
#include <sstream>

#include "traceforge/unicode.hpp"

namespace traceforge {

const TagSet& canonical_tags() {
  static const TagSet tags;
  return tags;
}

std::string_view trace_rule_name(TraceRule rule) {
  switch (rule) {
    case TraceRule::missing_thoughts: return "missing_thoughts";
    case TraceRule::missing_response: return "missing_response";
    case TraceRule::duplicate_block: return "duplicate_block";
    case TraceRule::empty_plan: return "empty_plan";
    case TraceRule::non_step_in_plan: return "non_step_in_plan";
    case TraceRule::bad_index_order: return "bad_index_order";
    case TraceRule::missing_step_field: return "missing_step_field";
    case TraceRule::unbalanced_tag: return "unbalanced_tag";
    case TraceRule::stray_text: return "stray_text";
  }
  return "unknown";
}

namespace {

std::string violation_message(const TraceViolation& v) {
  std::ostringstream os;
  os << trace_rule_name(v.rule) << " at offset " << v.location;
  if (!v.detail.empty()) os << ": " << v.detail;
  return os.str();
}

}  // namespace

ParseError::ParseError(TraceViolation v)
    : std::runtime_error(violation_message(v)), violation_(std::move(v)) {}

InvariantError::InvariantError(TraceViolation v)
    : std::runtime_error(violation_message(v)), violation_(std::move(v)) {}

namespace {

enum class Tag { thoughts, plan, step, title, scratch_pad, summary, next_step, response };

struct Tok {
  Tag tag;
  bool closing;
  size_t begin;
  size_t end;
};

struct TagNames {
  std::array<std::string_view, 8> by_tag;

  explicit TagNames(const TagSet& t)
      : by_tag{t.thoughts, t.plan,    t.step,      t.title,
               t.scratch_pad, t.summary, t.next_step, t.response} {}

  std::string_view name(Tag tag) const { return by_tag[static_cast<size_t>(tag)]; }
};

std::vector<Tok> lex(std::string_view text, const TagNames& names) {
  std::vector<Tok> out;
  size_t i = 0;
  while (i < text.size()) {
    size_t lt = text.find('<', i);
    if (lt == std::string_view::npos) break;
    size_t name_pos = lt + 1;
    bool closing = false;
    if (name_pos < text.size() && text[name_pos] == '/') {
      closing = true;
      ++name_pos;
    }
    bool matched = false;
    for (size_t k = 0; k < names.by_tag.size(); ++k) {
      std::string_view nm = names.by_tag[k];
      if (nm.empty()) continue;
      if (name_pos + nm.size() < text.size() &&
          text.compare(name_pos, nm.size(), nm) == 0 &&
          text[name_pos + nm.size()] == '>') {
        out.push_back({static_cast<Tag>(k), closing, lt, name_pos + nm.size() + 1});
        i = name_pos + nm.size() + 1;
        matched = true;
        break;
      }
    }
    if (!matched) i = lt + 1;
  }
  return out;
}

std::string snippet(std::string_view text, size_t at) {
  std::string s(text.substr(at, std::min<size_t>(32, text.size() - at)));
  for (char& c : s) {
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  return s;
}

// Token-walk parser with recovery: collects every violation instead of
// stopping at the first, so validate_trace can report them all.
class Walker {
public:
  Walker(std::string_view text, const TagNames& names)
      : text_(text), names_(names), toks_(lex(text, names)) {}

  ScanResult run() {
    parse_top();
    ScanResult result;
    result.violations = std::move(violations_);
    if (result.violations.empty()) result.trace = std::move(trace_);
    return result;
  }

private:
  std::string_view text_;
  const TagNames& names_;
  std::vector<Tok> toks_;
  std::vector<TraceViolation> violations_;
  ThoughtTrace trace_;
  size_t i_ = 0;        // token cursor
  size_t last_end_ = 0; // byte offset after the last consumed token

  bool done() const { return i_ >= toks_.size(); }
  const Tok& cur() const { return toks_[i_]; }

  void consume() {
    last_end_ = toks_[i_].end;
    ++i_;
  }

  void add(TraceRule rule, size_t loc, std::string detail) {
    violations_.push_back({rule, std::min(loc, text_.size()), std::move(detail)});
  }

  std::string tag_text(const Tok& t) const {
    std::string s = "<";
    if (t.closing) s += '/';
    s += names_.name(t.tag);
    s += '>';
    return s;
  }

  // Reports non-whitespace text in [from, to) under the given rule.
  void check_gap(size_t from, size_t to, TraceRule rule) {
    if (to <= from) return;
    std::string_view gap = text_.substr(from, to - from);
    std::string_view stripped = trim_view(gap);
    if (stripped.empty()) return;
    size_t at = from + static_cast<size_t>(stripped.data() - gap.data());
    add(rule, at, "unexpected text \"" + snippet(stripped, 0) + "\"");
  }

  void parse_top() {
    bool seen_thoughts = false;
    bool seen_response = false;
    bool have_response_content = false;
    size_t response_loc = 0;
    while (!done()) {
      const Tok t = cur();
      check_gap(last_end_, t.begin, TraceRule::stray_text);
      if (!t.closing && t.tag == Tag::thoughts) {
        if (seen_thoughts) {
          add(TraceRule::duplicate_block, t.begin, tag_text(t) + " appears more than once");
        } else if (seen_response) {
          add(TraceRule::unbalanced_tag, t.begin, tag_text(t) + " after the response block");
        }
        bool record = !seen_thoughts;
        seen_thoughts = true;
        consume();
        parse_thoughts_body(t, record);
      } else if (!t.closing && t.tag == Tag::response) {
        if (seen_response) {
          add(TraceRule::duplicate_block, t.begin, tag_text(t) + " appears more than once");
        }
        bool record = !seen_response;
        seen_response = true;
        std::string content = leaf_content(t);
        if (record) {
          trace_.response = trim(content);
          have_response_content = !trace_.response.empty();
          response_loc = t.begin;
        }
      } else if (t.closing) {
        add(TraceRule::unbalanced_tag, t.begin, tag_text(t) + " without a matching open tag");
        consume();
      } else {
        add(TraceRule::unbalanced_tag, t.begin, tag_text(t) + " outside its enclosing block");
        consume();
      }
    }
    check_gap(last_end_, text_.size(), TraceRule::stray_text);
    // Absent high-level blocks lead the list: they are the headline failure
    // even when stray content was seen earlier in the text.
    std::vector<TraceViolation> lead;
    if (!seen_thoughts) {
      lead.push_back({TraceRule::missing_thoughts, 0,
                      "no <" + std::string(names_.name(Tag::thoughts)) + "> block"});
    }
    if (!seen_response) {
      lead.push_back({TraceRule::missing_response, text_.size(),
                      "no <" + std::string(names_.name(Tag::response)) + "> block"});
    } else if (!have_response_content) {
      lead.push_back({TraceRule::missing_response, response_loc, "response is empty"});
    }
    violations_.insert(violations_.begin(), lead.begin(), lead.end());
  }

  void parse_thoughts_body(const Tok& open_tok, bool record) {
    bool seen_plan = false;
    bool have_steps = false;
    size_t local_steps = 0;
    for (;;) {
      if (done()) {
        add(TraceRule::unbalanced_tag, text_.size(), "missing " + close_text(Tag::thoughts));
        break;
      }
      const Tok t = cur();
      check_gap(last_end_, t.begin, TraceRule::stray_text);
      if (t.closing && t.tag == Tag::thoughts) {
        consume();
        break;
      }
      if (!t.closing && t.tag == Tag::plan) {
        if (seen_plan) {
          add(TraceRule::duplicate_block, t.begin, tag_text(t) + " appears more than once");
        } else if (have_steps) {
          add(TraceRule::unbalanced_tag, t.begin, tag_text(t) + " must precede reasoning steps");
        }
        parse_plan(t, record && !seen_plan);
        seen_plan = true;
      } else if (!t.closing && t.tag == Tag::step) {
        parse_reasoning_step(t, record);
        have_steps = true;
        ++local_steps;
      } else if (!t.closing && t.tag == Tag::response) {
        add(TraceRule::unbalanced_tag, t.begin, "missing " + close_text(Tag::thoughts));
        return;  // let the top level handle the response block
      } else {
        add(TraceRule::unbalanced_tag, t.begin,
            tag_text(t) + " not allowed directly inside <" +
                std::string(names_.name(Tag::thoughts)) + ">");
        consume();
      }
    }
    if (record && !seen_plan) {
      add(TraceRule::empty_plan, open_tok.begin,
          "no <" + std::string(names_.name(Tag::plan)) + "> block");
    }
    if (record && local_steps == 0) {
      add(TraceRule::missing_step_field, open_tok.begin, "thoughts contain no reasoning steps");
    }
  }

  void parse_plan(const Tok& open_tok, bool record) {
    consume();
    size_t entries = 0;
    for (;;) {
      if (done()) {
        add(TraceRule::unbalanced_tag, text_.size(), "missing " + close_text(Tag::plan));
        break;
      }
      const Tok t = cur();
      check_gap(last_end_, t.begin, TraceRule::non_step_in_plan);
      if (t.closing && t.tag == Tag::plan) {
        consume();
        break;
      }
      if (!t.closing && t.tag == Tag::step) {
        std::string content = leaf_content(t);
        ++entries;
        if (record) {
          trace_.plan.push_back({static_cast<int>(trace_.plan.size()) + 1, trim(content)});
        }
      } else if ((t.closing && t.tag == Tag::thoughts) || (!t.closing && t.tag == Tag::response)) {
        add(TraceRule::unbalanced_tag, t.begin, "missing " + close_text(Tag::plan));
        return;
      } else {
        add(TraceRule::non_step_in_plan, t.begin,
            tag_text(t) + " inside <" + std::string(names_.name(Tag::plan)) + ">");
        consume();
      }
    }
    if (record && entries == 0) {
      add(TraceRule::empty_plan, open_tok.begin, "plan has no steps");
    }
  }

  void parse_reasoning_step(const Tok& open_tok, bool record) {
    consume();
    std::optional<std::string> title, scratch, summary, next;
    const int step_no = static_cast<int>(trace_.steps.size()) + 1;
    for (;;) {
      if (done()) {
        add(TraceRule::unbalanced_tag, text_.size(), "missing " + close_text(Tag::step));
        break;
      }
      const Tok t = cur();
      check_gap(last_end_, t.begin, TraceRule::stray_text);
      if (t.closing && t.tag == Tag::step) {
        consume();
        break;
      }
      if (!t.closing && (t.tag == Tag::title || t.tag == Tag::scratch_pad ||
                         t.tag == Tag::summary || t.tag == Tag::next_step)) {
        std::optional<std::string>* slot = nullptr;
        switch (t.tag) {
          case Tag::title: slot = &title; break;
          case Tag::scratch_pad: slot = &scratch; break;
          case Tag::summary: slot = &summary; break;
          case Tag::next_step: slot = &next; break;
          default: break;
        }
        std::string content = leaf_content(t);
        if (slot->has_value()) {
          add(TraceRule::duplicate_block, t.begin,
              tag_text(t) + " appears more than once in a step");
        } else {
          *slot = trim(content);
        }
      } else if ((!t.closing && (t.tag == Tag::step || t.tag == Tag::plan || t.tag == Tag::response)) ||
                 (t.closing && t.tag == Tag::thoughts)) {
        add(TraceRule::unbalanced_tag, t.begin, "missing " + close_text(Tag::step));
        finalize_step(open_tok, step_no, title, scratch, summary, next, record);
        return;
      } else {
        add(TraceRule::unbalanced_tag, t.begin,
            tag_text(t) + " not allowed inside <" + std::string(names_.name(Tag::step)) + ">");
        consume();
      }
    }
    finalize_step(open_tok, step_no, title, scratch, summary, next, record);
  }

  void finalize_step(const Tok& open_tok, int step_no,
                     const std::optional<std::string>& title,
                     const std::optional<std::string>& scratch,
                     const std::optional<std::string>& summary,
                     const std::optional<std::string>& next, bool record) {
    struct FieldSlot {
      Tag tag;
      const std::optional<std::string>* value;
    };
    const FieldSlot fields[] = {
        {Tag::title, &title}, {Tag::scratch_pad, &scratch},
        {Tag::summary, &summary}, {Tag::next_step, &next}};
    for (const auto& f : fields) {
      if (!f.value->has_value()) {
        add(TraceRule::missing_step_field, open_tok.begin,
            "step " + std::to_string(step_no) + " is missing <" +
                std::string(names_.name(f.tag)) + ">");
      }
    }
    if (title.has_value() && trim_view(*title).empty()) {
      add(TraceRule::missing_step_field, open_tok.begin,
          "step " + std::to_string(step_no) + " has an empty title");
    }
    if (record) {
      trace_.steps.push_back({step_no, title.value_or(""), scratch.value_or(""),
                              summary.value_or(""), next.value_or("")});
    }
  }

  // Scans the content of a leaf tag up to its close tag. Any other canonical
  // token inside is a violation and ends the leaf without being consumed.
  std::string leaf_content(const Tok& open_tok) {
    consume();
    for (;;) {
      if (done()) {
        add(TraceRule::unbalanced_tag, text_.size(), "missing " + close_text(open_tok.tag));
        last_end_ = text_.size();
        return std::string(text_.substr(open_tok.end));
      }
      const Tok t = cur();
      if (t.closing && t.tag == open_tok.tag) {
        std::string content(text_.substr(open_tok.end, t.begin - open_tok.end));
        consume();
        return content;
      }
      add(TraceRule::unbalanced_tag, t.begin,
          "expected " + close_text(open_tok.tag) + " before " + tag_text(t));
      last_end_ = t.begin;
      return std::string(text_.substr(open_tok.end, t.begin - open_tok.end));
    }
  }

  std::string close_text(Tag tag) const {
    return "</" + std::string(names_.name(tag)) + ">";
  }
};

}  // namespace

std::vector<TagToken> find_canonical_tags(std::string_view text, const TagSet& tags) {
  TagNames names(tags);
  std::vector<TagToken> out;
  for (const Tok& t : lex(text, names)) {
    out.push_back({names.name(t.tag), t.closing, t.begin, t.end});
  }
  return out;
}

ScanResult scan_trace(std::string_view text, const TagSet& tags) {
  TagNames names(tags);
  Walker walker(text, names);
  return walker.run();
}

ThoughtTrace parse_trace(std::string_view text, const TagSet& tags) {
  ScanResult r = scan_trace(text, tags);
  if (!r.violations.empty()) throw ParseError(std::move(r.violations.front()));
  return std::move(*r.trace);
}

std::vector<TraceViolation> validate_trace(std::string_view text, const TagSet& tags) {
  return scan_trace(text, tags).violations;
}

std::vector<TraceViolation> check_trace(const ThoughtTrace& t) {
  std::vector<TraceViolation> v;
  if (t.plan.empty()) {
    v.push_back({TraceRule::empty_plan, 0, "plan is empty"});
  } else {
    for (size_t i = 0; i < t.plan.size(); ++i) {
      if (t.plan[i].index != static_cast<int>(i) + 1) {
        v.push_back({TraceRule::bad_index_order, 0,
                     "plan entry " + std::to_string(i + 1) + " has index " +
                         std::to_string(t.plan[i].index)});
      }
    }
  }
  if (t.steps.empty()) {
    v.push_back({TraceRule::missing_step_field, 0, "trace has no reasoning steps"});
  } else {
    for (size_t i = 0; i < t.steps.size(); ++i) {
      if (t.steps[i].index != static_cast<int>(i) + 1) {
        v.push_back({TraceRule::bad_index_order, 0,
                     "step " + std::to_string(i + 1) + " has index " +
                         std::to_string(t.steps[i].index)});
      }
      if (trim_view(t.steps[i].title).empty()) {
        v.push_back({TraceRule::missing_step_field, 0,
                     "step " + std::to_string(i + 1) + " has an empty title"});
      }
    }
  }
  if (trim_view(t.response).empty()) {
    v.push_back({TraceRule::missing_response, 0, "response is empty"});
  }
  return v;
}

std::string render_trace(const ThoughtTrace& t, const TagSet& tags) {
  auto violations = check_trace(t);
  if (!violations.empty()) throw InvariantError(std::move(violations.front()));

  const auto open = [](const std::string& n) { return "<" + n + ">"; };
  const auto close = [](const std::string& n) { return "</" + n + ">"; };

  std::string out;
  out += open(tags.thoughts);
  out += '\n';
  out += open(tags.plan);
  out += '\n';
  for (const PlanEntry& e : t.plan) {
    out += open(tags.step) + trim(e.description) + close(tags.step);
    out += '\n';
  }
  out += close(tags.plan);
  out += '\n';
  for (const ReasoningStep& s : t.steps) {
    out += open(tags.step);
    out += '\n';
    out += open(tags.title) + trim(s.title) + close(tags.title);
    out += '\n';
    out += open(tags.scratch_pad) + trim(s.scratch_pad) + close(tags.scratch_pad);
    out += '\n';
    out += open(tags.summary) + trim(s.summary) + close(tags.summary);
    out += '\n';
    out += open(tags.next_step) + trim(s.next_step) + close(tags.next_step);
    out += '\n';
    out += close(tags.step);
    out += '\n';
  }
  out += close(tags.thoughts);
  out += '\n';
  out += open(tags.response);
  out += '\n';
  out += trim(t.response);
  out += '\n';
  out += close(tags.response);
  return out;
}

size_t step_count(const ThoughtTrace& t) { return t.steps.size(); }

}  // namespace traceforge
