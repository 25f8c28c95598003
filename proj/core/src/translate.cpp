#include "traceforge/translate.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include "traceforge/unicode.hpp"
#include "worker_pool.hpp"

namespace traceforge {

std::string_view translation_status_name(TranslationStatus s) {
  switch (s) {
    case TranslationStatus::accepted: return "accepted";
    case TranslationStatus::rejected_prefix_unremovable: return "rejected_prefix_unremovable";
    case TranslationStatus::rejected_tags_in_instruction: return "rejected_tags_in_instruction";
    case TranslationStatus::rejected_tag_mismatch: return "rejected_tag_mismatch";
    case TranslationStatus::rejected_transport: return "rejected_transport";
  }
  return "unknown";
}

std::vector<std::string> default_prefix_patterns() {
  // A single boilerplate line ending in a colon, e.g. "Here is the translation:".
  return {R"(.*:)"};
}

namespace {

std::string substitute(std::string text, std::string_view slot, std::string_view value) {
  size_t pos = 0;
  while ((pos = text.find(slot, pos)) != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
  return text;
}

}  // namespace

std::string translator_prompt(std::string_view text, const TranslateOptions& options) {
  std::string prompt = substitute(options.prompt_template, "{lang}", options.language);
  size_t slot = prompt.find("{text}");
  if (slot == std::string::npos) {
    throw std::invalid_argument("translator prompt template lacks the {text} slot");
  }
  prompt.replace(slot, 6, text);
  return prompt;
}

RawTranslation translate_record(const Record& r, ChatClient& client,
                                const TranslateOptions& options) {
  const auto call = [&](std::string_view text) {
    std::vector<ChatMessage> messages{{Role::user, translator_prompt(text, options)}};
    try {
      return client.complete(messages, options.params);
    } catch (const TransportError& e) {
      throw TransportError("record '" + r.id + "': " + e.what());
    }
  };
  RawTranslation raw;
  raw.instruction = call(r.instruction);
  raw.output = call(r.output);
  return raw;
}

std::string strip_translation_prefix(std::string_view text,
                                     const std::vector<std::string>& patterns,
                                     const TagSet& tags) {
  auto tokens = find_canonical_tags(text, tags);
  if (tokens.empty()) return std::string(text);
  size_t first_tag = tokens.front().begin;
  std::string_view before = trim_view(text.substr(0, first_tag));
  if (before.empty()) return std::string(text);
  if (before.find('\n') != std::string_view::npos) return std::string(text);  // multi-line: keep
  for (const std::string& pattern : patterns) {
    std::regex re(pattern);
    if (std::regex_match(before.begin(), before.end(), re)) {
      return std::string(text.substr(first_tag));
    }
  }
  return std::string(text);
}

namespace {

// Tag occurrences keyed by (name, closing); open and close counted apart so
// a dropped close tag is a mismatch even when the open survives.
std::map<std::pair<std::string, bool>, size_t> tag_multiset(std::string_view text,
                                                            const TagSet& tags) {
  std::map<std::pair<std::string, bool>, size_t> counts;
  for (const TagToken& t : find_canonical_tags(text, tags)) {
    ++counts[{std::string(t.name), t.closing}];
  }
  return counts;
}

}  // namespace

TranslationVerdict postprocess(const RawTranslation& raw, const Record& original,
                               const TranslateOptions& options, const TagSet& tags) {
  TranslationVerdict verdict;

  std::string output = strip_translation_prefix(raw.output, options.prefix_patterns, tags);

  // Residual non-tag lead-in means the prefix rules could not clean it.
  auto out_tokens = find_canonical_tags(output, tags);
  if (!out_tokens.empty() && !trim_view(std::string_view(output).substr(0, out_tokens.front().begin)).empty()) {
    verdict.status = TranslationStatus::rejected_prefix_unremovable;
    return verdict;
  }

  if (!find_canonical_tags(raw.instruction, tags).empty()) {
    verdict.status = TranslationStatus::rejected_tags_in_instruction;
    return verdict;
  }

  if (tag_multiset(output, tags) != tag_multiset(original.output, tags)) {
    verdict.status = TranslationStatus::rejected_tag_mismatch;
    return verdict;
  }
  // Equal multisets can still nest wrongly; accepted records must parse.
  if (!validate_trace(output, tags).empty()) {
    verdict.status = TranslationStatus::rejected_tag_mismatch;
    return verdict;
  }

  Record cleaned = original;
  cleaned.instruction = trim(raw.instruction);
  cleaned.output = std::move(output);
  cleaned.meta["source_language"] = options.source_language;
  cleaned.meta["target_language"] = options.language;
  verdict.status = TranslationStatus::accepted;
  verdict.cleaned = std::move(cleaned);
  return verdict;
}

TranslateResult run_translation(const Corpus& corpus, ChatClient& client,
                                const TranslateOptions& options) {
  const size_t n = corpus.size();
  std::vector<TranslationVerdict> verdicts(n);

  detail::parallel_for_indexed(n, options.concurrency, [&](size_t i) {
    const Record& input = corpus.records[i];
    int delay_ms = options.retry_initial_delay_ms;
    for (int attempt = 0;; ++attempt) {
      try {
        RawTranslation raw = translate_record(input, client, options);
        verdicts[i] = postprocess(raw, input, options);
        return;
      } catch (const TransportError&) {
        if (attempt >= options.transport_retries) {
          verdicts[i].status = TranslationStatus::rejected_transport;
          return;
        }
        if (delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        delay_ms *= 2;
      } catch (const std::exception&) {
        // Workers must not throw; unexpected client failures reject the record.
        verdicts[i].status = TranslationStatus::rejected_transport;
        return;
      }
    }
  });

  TranslateResult result;
  for (size_t i = 0; i < n; ++i) {
    TranslationVerdict& v = verdicts[i];
    ++result.report.by_status[std::string(translation_status_name(v.status))];
    if (v.status == TranslationStatus::accepted) {
      ++result.report.accepted;
      result.accepted.records.push_back(std::move(*v.cleaned));
    } else {
      ++result.report.rejected;
      Record r = corpus.records[i];
      r.meta["rejection"] = std::string(translation_status_name(v.status));
      result.rejected.records.push_back(std::move(r));
    }
  }
  return result;
}

std::string load_prompt_template(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open prompt template " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  std::string text = std::move(os).str();
  if (text.find("{text}") == std::string::npos) {
    throw std::runtime_error(path.string() + ": template lacks the {text} slot");
  }
  return text;
}

}  // namespace traceforge
