#include "traceforge/evalx.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>

#include "traceforge/unicode.hpp"

#include "json.hpp"

namespace traceforge {

std::string normalize_answer(std::string_view answer) {
  std::string out = trim(answer);
  if (out.size() == 1 && std::isalpha(static_cast<unsigned char>(out[0]))) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

namespace {

struct CompiledRule {
  std::regex re;
  ExtractionRule::Occurrence occurrence;
};

std::vector<CompiledRule> compile_rules(const std::vector<ExtractionRule>& rules) {
  if (rules.empty()) throw RuleError("rule list is empty");
  std::vector<const ExtractionRule*> ordered;
  ordered.reserve(rules.size());
  for (const ExtractionRule& r : rules) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const ExtractionRule* a, const ExtractionRule* b) {
                     return a->priority < b->priority;
                   });
  std::vector<CompiledRule> out;
  out.reserve(ordered.size());
  for (const ExtractionRule* r : ordered) {
    try {
      std::regex re(r->pattern, std::regex::ECMAScript);
      if (re.mark_count() != 1) {
        throw RuleError("pattern '" + r->pattern + "' must have exactly one capture group");
      }
      out.push_back({std::move(re), r->occurrence});
    } catch (const std::regex_error& e) {
      throw RuleError("pattern '" + r->pattern + "' does not compile: " + e.what());
    }
  }
  return out;
}

std::optional<std::string> apply_rules(const std::string& scope,
                                       const std::vector<CompiledRule>& rules) {
  for (const CompiledRule& rule : rules) {
    std::optional<std::string> hit;
    for (auto it = std::sregex_iterator(scope.begin(), scope.end(), rule.re);
         it != std::sregex_iterator(); ++it) {
      hit = (*it)[1].str();
      if (rule.occurrence == ExtractionRule::Occurrence::first) break;
    }
    if (hit) return normalize_answer(*hit);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> extract_answer(std::string_view text,
                                          const std::vector<ExtractionRule>& rules,
                                          const TagSet& tags) {
  const std::vector<CompiledRule> compiled = compile_rules(rules);
  ScanResult scan = scan_trace(text, tags);
  const std::string scope = scan.trace ? scan.trace->response : std::string(text);
  return apply_rules(scope, compiled);
}

ScoreResult score(const std::vector<EvalItem>& items, const std::vector<ExtractionRule>& rules,
                  const TagSet& tags) {
  if (items.empty()) throw std::invalid_argument("no items to score");
  const std::vector<CompiledRule> compiled = compile_rules(rules);
  ScoreResult result;
  size_t correct = 0;
  for (const EvalItem& item : items) {
    ItemVerdict v;
    v.id = item.id;
    v.gold = normalize_answer(item.gold);
    ScanResult scan = scan_trace(item.prediction_text, tags);
    const std::string scope = scan.trace ? scan.trace->response : item.prediction_text;
    v.extracted = apply_rules(scope, compiled);
    v.correct = v.extracted.has_value() && *v.extracted == v.gold;
    if (v.correct) ++correct;
    result.verdicts.push_back(std::move(v));
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(items.size());
  return result;
}

std::vector<ExtractionRule> default_rules() {
  return {
      {R"([Aa]nswer\s+is\s*:?\s*\(?([A-Ea-e])\)?)", 1, ExtractionRule::Occurrence::last},
      {R"(\(([A-Ea-e])\))", 2, ExtractionRule::Occurrence::last},
      {R"(\b([A-Ea-e])\s*\.?\s*$)", 3, ExtractionRule::Occurrence::last},
  };
}

std::vector<ExtractionRule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuleError("cannot open rules file " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    throw RuleError(path.string() + ": expected a JSON array of rules");
  }
  std::vector<ExtractionRule> rules;
  for (const auto& e : j) {
    ExtractionRule r;
    r.pattern = e.at("pattern").get<std::string>();
    r.priority = e.value("priority", static_cast<int>(rules.size()));
    std::string occ = e.value("occurrence", "last");
    if (occ == "first") {
      r.occurrence = ExtractionRule::Occurrence::first;
    } else if (occ == "last") {
      r.occurrence = ExtractionRule::Occurrence::last;
    } else {
      throw RuleError(path.string() + ": occurrence must be 'first' or 'last'");
    }
    rules.push_back(std::move(r));
  }
  if (rules.empty()) throw RuleError(path.string() + ": rule list is empty");
  return rules;
}

std::vector<EvalItem> read_eval_items(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open items file " + path.string());
  std::vector<EvalItem> items;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_view(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw std::runtime_error(path.string() + ": malformed JSON at line " +
                               std::to_string(line_no));
    }
    EvalItem item;
    item.id = j.value("id", std::to_string(line_no));
    item.prediction_text = j.at("prediction_text").get<std::string>();
    item.gold = j.at("gold").get<std::string>();
    if (item.gold.empty()) {
      throw std::runtime_error(path.string() + ": line " + std::to_string(line_no) +
                               ": gold must be non-empty");
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::string_view forced_language_name(ForcedLanguage lang) {
  return lang == ForcedLanguage::english ? "English" : "Thai";
}

std::string force_language_prompt(std::string_view question, ForcedLanguage lang,
                                  std::string_view template_text) {
  const std::string slot = "{lang}";
  size_t first = template_text.find(slot);
  if (first == std::string_view::npos) {
    throw MissingSlotError("template lacks the {lang} slot");
  }
  if (template_text.find(slot, first + slot.size()) != std::string_view::npos) {
    throw MissingSlotError("template must contain exactly one {lang} slot");
  }
  std::string out(template_text);
  out.replace(first, slot.size(), forced_language_name(lang));
  if (!question.empty()) {
    out += "\n\n";
    out += question;
  }
  return out;
}

}  // namespace traceforge
