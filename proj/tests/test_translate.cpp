#include "doctest.h"

#include <functional>

#include "support/test_util.hpp"
#include "traceforge/translate.hpp"

using namespace traceforge;

namespace {

class LambdaClient : public ChatClient {
public:
  using Fn = std::function<std::string(const std::vector<ChatMessage>&, const ChatParams&)>;
  explicit LambdaClient(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const std::vector<ChatMessage>& messages,
                       const ChatParams& params) override {
    return fn_(messages, params);
  }

private:
  Fn fn_;
};

Record trace_record(const std::string& id) {
  Record r;
  r.id = id;
  r.instruction = "Solve the puzzle " + id;
  r.output = tf_test::park_model_trace();
  r.domain = "mathematics";
  r.source = "unit";
  return r;
}

TranslateOptions options_with_template() {
  TranslateOptions opt;
  opt.prompt_template =
      "Translate into {lang}. Preserve every structural XML tag exactly as it appears.\n"
      "Content:\n{text}";
  opt.concurrency = 2;
  opt.transport_retries = 0;
  opt.retry_initial_delay_ms = 0;
  return opt;
}

}  // namespace

TEST_SUITE("translate") {

TEST_CASE("prompt assembly substitutes the language and embeds the text") {
  TranslateOptions opt = options_with_template();
  std::string prompt = translator_prompt("SOURCE-TEXT", opt);
  CHECK(prompt.find("Translate into Thai.") != std::string::npos);
  CHECK(prompt.find("Preserve every structural XML tag") != std::string::npos);
  CHECK(prompt.find("SOURCE-TEXT") != std::string::npos);

  TranslateOptions no_slot = opt;
  no_slot.prompt_template = "no text slot";
  CHECK_THROWS_AS(translator_prompt("x", no_slot), std::invalid_argument);
}

TEST_CASE("translate_record makes one call per field") {
  TranslateOptions opt = options_with_template();
  Record r = trace_record("t1");
  int calls = 0;
  LambdaClient echo([&](const std::vector<ChatMessage>& messages, const ChatParams&) {
    ++calls;
    // Echo back only the embedded content.
    const std::string& p = messages[0].text;
    size_t pos = p.find("Content:\n");
    return p.substr(pos + 9);
  });
  RawTranslation raw = translate_record(r, echo, opt);
  CHECK(calls == 2);
  CHECK(raw.instruction == r.instruction);
  CHECK(raw.output == r.output);
}

TEST_CASE("transport errors carry the record id") {
  TranslateOptions opt = options_with_template();
  LambdaClient boom([](const auto&, const auto&) -> std::string {
    throw TransportError("down");
  });
  CHECK_THROWS_WITH_AS(translate_record(trace_record("tr-3"), boom, opt),
                       doctest::Contains("tr-3"), TransportError);
}

TEST_CASE("prefix stripping follows the pattern list and is idempotent") {
  std::string with_prefix = "Here is the translation:\n<thoughts>rest</thoughts>";
  CHECK(strip_translation_prefix(with_prefix) == "<thoughts>rest</thoughts>");

  std::string clean = "<thoughts>rest</thoughts>";
  CHECK(strip_translation_prefix(clean) == clean);

  CHECK(strip_translation_prefix(strip_translation_prefix(with_prefix)) ==
        strip_translation_prefix(with_prefix));

  // No colon: not boilerplate under the default rules.
  std::string no_colon = "Some commentary\n<thoughts>rest</thoughts>";
  CHECK(strip_translation_prefix(no_colon) == no_colon);

  // Multi-line preambles are not single boilerplate lines.
  std::string multi = "Line one:\nLine two:\n<thoughts>rest</thoughts>";
  CHECK(strip_translation_prefix(multi) == multi);

  // No tags at all: identity.
  CHECK(strip_translation_prefix("nothing here") == "nothing here");
}

TEST_CASE("postprocess classifies the failure modes") {
  Record original = trace_record("pp");
  TranslateOptions opt = options_with_template();

  SUBCASE("clean pair is accepted") {
    RawTranslation raw{"แก้ปริศนา", original.output};
    TranslationVerdict v = postprocess(raw, original, opt);
    REQUIRE(v.status == TranslationStatus::accepted);
    REQUIRE(v.cleaned.has_value());
    CHECK(v.cleaned->id == original.id);
    CHECK(v.cleaned->domain == original.domain);
    CHECK(v.cleaned->source == original.source);
    CHECK(v.cleaned->instruction == "แก้ปริศนา");
    CHECK(v.cleaned->meta.at("target_language") == "Thai");
    CHECK(v.cleaned->meta.at("source_language") == "English");
    CHECK(validate_trace(v.cleaned->output).empty());
  }

  SUBCASE("strippable prefix is removed before the checks") {
    RawTranslation raw{"คำสั่ง", "Here is the translation:\n" + original.output};
    TranslationVerdict v = postprocess(raw, original, opt);
    CHECK(v.status == TranslationStatus::accepted);
    CHECK(v.cleaned->output == original.output);
  }

  SUBCASE("unremovable prefix rejects") {
    RawTranslation raw{"คำสั่ง", "I translated this\nfor you today\n" + original.output};
    CHECK(postprocess(raw, original, opt).status ==
          TranslationStatus::rejected_prefix_unremovable);
  }

  SUBCASE("tags in the instruction reject") {
    RawTranslation raw{"<thoughts>แก้</thoughts>", original.output};
    CHECK(postprocess(raw, original, opt).status ==
          TranslationStatus::rejected_tags_in_instruction);
  }

  SUBCASE("a dropped close tag rejects as a tag mismatch") {
    std::string broken = original.output;
    size_t pos = broken.rfind("</step>");
    broken.erase(pos, 7);
    RawTranslation raw{"คำสั่ง", broken};
    CHECK(postprocess(raw, original, opt).status == TranslationStatus::rejected_tag_mismatch);
  }

  SUBCASE("equal multiset with broken nesting still rejects") {
    // Move the whole plan block after the steps: counts match, order breaks.
    std::string reordered = original.output;
    size_t plan_begin = reordered.find("<plan>");
    size_t plan_end = reordered.find("</plan>") + 7;
    std::string plan_block = reordered.substr(plan_begin, plan_end - plan_begin);
    reordered.erase(plan_begin, plan_end - plan_begin);
    size_t thoughts_close = reordered.find("</thoughts>");
    reordered.insert(thoughts_close, plan_block);
    RawTranslation raw{"คำสั่ง", reordered};
    CHECK(postprocess(raw, original, opt).status == TranslationStatus::rejected_tag_mismatch);
  }

  SUBCASE("output with no tags at all is a tag mismatch") {
    RawTranslation raw{"คำสั่ง", "translation lost the structure"};
    CHECK(postprocess(raw, original, opt).status == TranslationStatus::rejected_tag_mismatch);
  }
}

TEST_CASE("batch translation preserves order and reports statuses") {
  TranslateOptions opt = options_with_template();
  Corpus corpus;
  for (int i = 0; i < 6; ++i) corpus.records.push_back(trace_record("b" + std::to_string(i)));

  // b3's output translation drops its tags; the rest echo cleanly.
  LambdaClient mock([&](const std::vector<ChatMessage>& messages, const ChatParams&) {
    const std::string& p = messages[0].text;
    size_t pos = p.find("Content:\n");
    std::string content = p.substr(pos + 9);
    if (content.find("Solve the puzzle") != std::string::npos) {
      return std::string("ปริศนา ") + content;  // instruction: plain text
    }
    if (p.find("b3") != std::string::npos) return std::string("broken");
    return content;
  });

  // The record id is not inside the prompt; mark b3 by altering its output.
  corpus.records[3].output =
      "<thoughts>\n<plan>\n<step>b3</step>\n</plan>\n<step>\n<title>b3</title>\n"
      "<scratch_pad>b3</scratch_pad>\n<summary></summary>\n<next_step></next_step>\n"
      "</step>\n</thoughts>\n<response>\nb3\n</response>";

  TranslateResult result = run_translation(corpus, mock, opt);
  CHECK(result.report.accepted == 5);
  CHECK(result.report.rejected == 1);
  CHECK(result.report.by_status.at("accepted") == 5);
  CHECK(result.report.by_status.at("rejected_tag_mismatch") == 1);
  REQUIRE(result.rejected.size() == 1);
  CHECK(result.rejected.records[0].id == "b3");
  CHECK(result.rejected.records[0].meta.at("rejection") == "rejected_tag_mismatch");
  // Accepted bucket preserves input order.
  CHECK(result.accepted.records[0].id == "b0");
  CHECK(result.accepted.records[4].id == "b5");
}

TEST_CASE("transport failures become rejected_transport verdicts") {
  TranslateOptions opt = options_with_template();
  Corpus corpus;
  corpus.records = {trace_record("x")};
  LambdaClient boom([](const auto&, const auto&) -> std::string {
    throw TransportError("no route");
  });
  TranslateResult result = run_translation(corpus, boom, opt);
  CHECK(result.report.rejected == 1);
  CHECK(result.report.by_status.at("rejected_transport") == 1);
}

}  // TEST_SUITE
