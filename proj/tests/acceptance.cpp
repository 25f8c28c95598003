// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "support/test_util.hpp"

#include "traceforge/analytics.hpp"
#include "traceforge/chat_client.hpp"
#include "traceforge/convert.hpp"
#include "traceforge/corpus.hpp"
#include "traceforge/evalx.hpp"
#include "traceforge/mixer.hpp"
#include "traceforge/pipeline.hpp"
#include "traceforge/prm.hpp"
#include "traceforge/schema.hpp"
#include "traceforge/translate.hpp"

#include "json.hpp"

using namespace traceforge;
using tf_test::TempDir;

namespace {

#define ACCEPT_CHECK(cond, message)                     \
  do {                                                  \
    if (!(cond)) {                                      \
      detail = std::string(message) + " [" #cond "]";   \
      return false;                                     \
    }                                                   \
  } while (0)

int run_command(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path assets_dir() { return TRACEFORGE_ASSETS_DIR; }

// --------------------------------------------------------------------------
// criterion 1 & 2 support: placeholder corpora matching the shipped spec

void generate_placeholders(const MixtureSpec& spec, const TempDir& dir) {
  for (const MixturePart& part : spec.parts) {
    Corpus c;
    for (size_t i = 0; i < *part.target_count; ++i) {
      Record r;
      r.id = part.name + "-" + std::to_string(i);
      r.instruction = "placeholder instruction " + std::to_string(i);
      r.output = "placeholder output " + std::to_string(i);
      r.domain = part.domain;
      r.source = part.name;
      if (part.rating_filter) r.rating = *part.rating_filter + 0.25;
      c.records.push_back(std::move(r));
    }
    std::filesystem::path rel = std::filesystem::relative(
        part.source_path, assets_dir() / "mixtures");
    write_jsonl(c, dir.path() / rel);
  }
}

bool criterion_mixture_arithmetic(std::string& detail) {
  MixtureSpec shipped = read_mixture_spec(assets_dir() / "mixtures/training_mix.cfg");
  ACCEPT_CHECK(shipped.parts.size() == 11, "spec must list 11 parts");

  TempDir dir("accept_mix");
  generate_placeholders(shipped, dir);
  std::filesystem::copy_file(assets_dir() / "mixtures/training_mix.cfg",
                             dir.file("training_mix.cfg"));

  const std::map<int, size_t> expected = {{100, 55677}, {75, 41755}, {50, 27837}};
  for (const auto& [percent, want] : expected) {
    auto report_path = dir.file("mix_" + std::to_string(percent) + ".report.json");
    std::string cmd = std::string(TRACEFORGE_CLI_PATH) + " mix --spec " +
                      dir.file("training_mix.cfg").string() + " --percent " +
                      std::to_string(percent) + " --report " + report_path.string() + " > " +
                      dir.file("stdout.txt").string() + " 2>&1";
    auto t0 = std::chrono::steady_clock::now();
    int code = run_command(cmd);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    ACCEPT_CHECK(code == 0, "mix --percent " + std::to_string(percent) + " exited " +
                                std::to_string(code));
    auto report = nlohmann::json::parse(tf_test::read_file(report_path));
    size_t total = report.at("total").get<size_t>();
    ACCEPT_CHECK(total == want, "percent " + std::to_string(percent) + ": total " +
                                    std::to_string(total) + " != " + std::to_string(want));
    ACCEPT_CHECK(ms < 1000, "mix --percent " + std::to_string(percent) + " took " +
                                std::to_string(ms) + " ms");
  }
  return true;
}

bool criterion_leave_one_out(std::string& detail) {
  MixtureSpec shipped = read_mixture_spec(assets_dir() / "mixtures/training_mix.cfg");
  const std::map<Domain, size_t> subtotal = {
      {Domain::mathematics, 21941},
      {Domain::instruction_following, 13188},
      {Domain::coding, 10814},
      {Domain::safety, 5300},
      {Domain::finance, 4434},
  };
  for (const auto& [domain, removed] : subtotal) {
    MixtureSpec loo = leave_one_out(shipped, domain);
    size_t total = 0;
    for (const auto& part : loo.parts) total += *part.target_count;
    size_t want = 55677 - removed;
    ACCEPT_CHECK(total == want, std::string(domain_name(domain)) + ": " +
                                    std::to_string(total) + " != " + std::to_string(want));
  }
  // The worked example: finance removal leaves 51,243.
  MixtureSpec no_finance = leave_one_out(shipped, Domain::finance);
  size_t total = 0;
  for (const auto& part : no_finance.parts) total += *part.target_count;
  ACCEPT_CHECK(total == 51243, "finance removal must leave 51243");
  return true;
}

bool criterion_schema_properties(std::string& detail) {
  SplitMix64 rng(0xACCE5501);
  for (int i = 0; i < 10000; ++i) {
    ThoughtTrace t = tf_test::random_trace(rng);
    std::string text = render_trace(t);
    ThoughtTrace back = parse_trace(text);
    if (!(back == t)) {
      detail = "roundtrip mismatch at case " + std::to_string(i);
      return false;
    }
  }
  SplitMix64 fuzz_rng(0xACCE5502);
  for (int i = 0; i < 10000; ++i) {
    std::string text = tf_test::fuzz_text(fuzz_rng);
    auto violations = validate_trace(text);  // must not crash
    for (const auto& v : violations) {
      ACCEPT_CHECK(v.location <= text.size(), "violation offset out of range");
    }
  }

  std::string two_responses =
      render_trace(tf_test::minimal_trace()) + "\n<response>again</response>";
  bool dup = false;
  for (const auto& v : validate_trace(two_responses)) {
    dup |= v.rule == TraceRule::duplicate_block;
  }
  ACCEPT_CHECK(dup, "duplicate response block must flag duplicate_block");

  std::string empty_plan =
      "<thoughts><plan></plan>"
      "<step><title>t</title><scratch_pad>s</scratch_pad>"
      "<summary>u</summary><next_step>n</next_step></step>"
      "</thoughts><response>r</response>";
  bool empty = false;
  for (const auto& v : validate_trace(empty_plan)) {
    empty |= v.rule == TraceRule::empty_plan;
  }
  ACCEPT_CHECK(empty, "empty plan must flag empty_plan");
  return true;
}

bool criterion_conversion_equivalence(std::string& detail) {
  SplitMix64 rng(0xACCE5503);
  const auto& tags = canonical_tags();
  for (int i = 0; i < 1000; ++i) {
    std::string structured = render_trace(tf_test::random_trace(rng));
    std::string semi = to_semi_structured(structured);
    std::string unstructured = to_unstructured(structured);

    std::string canon = canonical_text(structured);
    ACCEPT_CHECK(canonical_text(semi) == canon,
                 "semi-structured canonical text diverges at case " + std::to_string(i));
    ACCEPT_CHECK(canonical_text(unstructured) == canon,
                 "unstructured canonical text diverges at case " + std::to_string(i));

    ACCEPT_CHECK(find_canonical_tags(unstructured).empty(),
                 "unstructured output contains canonical tags at case " + std::to_string(i));
    auto semi_tags = find_canonical_tags(semi);
    ACCEPT_CHECK(semi_tags.size() == 4, "semi output must have exactly 4 tag tokens");
    ACCEPT_CHECK(semi_tags[0].name == tags.thoughts && !semi_tags[0].closing,
                 "semi output must open with <thoughts>");
    ACCEPT_CHECK(semi_tags[1].name == tags.thoughts && semi_tags[1].closing,
                 "semi output must close thoughts");
    ACCEPT_CHECK(semi_tags[2].name == tags.response && !semi_tags[2].closing,
                 "semi output must open <response>");
    ACCEPT_CHECK(semi_tags[3].name == tags.response && semi_tags[3].closing,
                 "semi output must close response");
  }
  return true;
}

bool criterion_synthesizer_statistics(std::string& detail) {
  const size_t problems = 1250;
  const size_t steps_per_problem = 8;  // 10,000 steps total

  auto make_problem = [](size_t idx, size_t steps) {
    PrmProblem p;
    p.id = "acc-" + std::to_string(idx);
    p.problem = "problem " + std::to_string(idx);
    p.gold_answer = "answer " + std::to_string(idx);
    for (size_t s = 0; s < steps; ++s) {
      PrmStep step;
      step.candidates.push_back({"good " + std::to_string(s), true});
      step.candidates.push_back({"bad " + std::to_string(s), false});
      p.steps.push_back(std::move(step));
    }
    return p;
  };

  SynthConfig cfg = default_synth_config();
  cfg.p_incorrect = 0.5;
  cfg.seed = 20250810;
  size_t reflections = 0;
  for (size_t i = 0; i < problems; ++i) {
    PrmProblem p = make_problem(i, steps_per_problem);
    std::string text = synthesize_response(p, cfg);
    ThoughtTrace t = parse_trace(text);
    ACCEPT_CHECK((step_count(t) - steps_per_problem) % 2 == 0, "unexpected step expansion");
    reflections += (step_count(t) - steps_per_problem) / 2;
  }
  double rate = static_cast<double>(reflections) / 10000.0;
  ACCEPT_CHECK(std::abs(rate - 0.5) <= 0.015,  // 3 standard errors
               "reflection rate " + std::to_string(rate) + " outside 0.5 +/- 0.015");

  SynthConfig zero = cfg;
  zero.p_incorrect = 0.0;
  for (size_t i = 0; i < 50; ++i) {
    PrmProblem p = make_problem(i, steps_per_problem);
    ThoughtTrace t = parse_trace(synthesize_response(p, zero));
    ACCEPT_CHECK(step_count(t) == steps_per_problem, "p_incorrect=0 must not reflect");
  }

  PrmProblem p = make_problem(7, 5);
  ACCEPT_CHECK(synthesize_response(p, cfg) == synthesize_response(p, cfg),
               "fixed seed must be byte-identical across runs");
  return true;
}

bool criterion_pipeline_conservation(std::string& detail) {
  TempDir dir("accept_pipe");
  PipelineConfig cfg;
  cfg.transform_exemplars = {"EX1", "EX2", "EX3"};
  cfg.refine_exemplars = cfg.transform_exemplars;
  cfg.transport_retries = 0;
  cfg.retry_initial_delay_ms = 0;
  cfg.concurrency = 8;

  Corpus corpus;
  for (int i = 0; i < 100; ++i) {
    Record r;
    r.id = "rec-" + std::to_string(i);
    r.instruction = "question " + std::to_string(i);
    r.output = "answer " + std::to_string(i);
    r.domain = "mathematics";
    r.source = "acceptance";
    corpus.records.push_back(std::move(r));
  }

  // 80 records transform cleanly, 10 are repaired by refinement, 10 stay
  // broken through both refine rounds.
  std::string mock;
  auto add_entry = [&mock](const std::string& fp, const std::string& response) {
    mock += nlohmann::json{{"fingerprint", fp}, {"response", response}}.dump() + "\n";
  };
  for (int i = 0; i < 100; ++i) {
    const Record& r = corpus.records[i];
    ThoughtTrace t = tf_test::minimal_trace();
    t.response = "final answer " + std::to_string(i);
    std::string valid = render_trace(t);
    std::string transform_fp =
        request_fingerprint(transform_prompt(r, cfg), cfg.transform_params);
    if (i % 10 == 3) {  // repairable: junk then fixed by refine
      std::string junk = "missing all tags " + std::to_string(i);
      add_entry(transform_fp, junk);
      add_entry(request_fingerprint(refine_prompt(junk, r, cfg), cfg.refine_params), valid);
    } else if (i % 10 == 7) {  // unfixable: refine echoes the junk
      std::string junk = "hopeless " + std::to_string(i);
      add_entry(transform_fp, junk);
      add_entry(request_fingerprint(refine_prompt(junk, r, cfg), cfg.refine_params), junk);
    } else {
      add_entry(transform_fp, valid);
    }
  }
  tf_test::write_file(dir.file("mock.jsonl"), mock);

  auto snapshot = [](const PipelineResult& result) {
    std::string bytes;
    for (const Record& r : result.accepted.records) bytes += to_jsonl_line(r) + "\n";
    bytes += "--\n";
    for (const Record& r : result.quarantined.records) bytes += to_jsonl_line(r) + "\n";
    return bytes;
  };

  FileMockClient client1(dir.file("mock.jsonl"));
  PipelineResult run1 = run_pipeline(corpus, client1, client1, cfg);
  FileMockClient client2(dir.file("mock.jsonl"));
  PipelineResult run2 = run_pipeline(corpus, client2, client2, cfg);

  ACCEPT_CHECK(run1.report.accepted + run1.report.quarantined == 100,
               "accepted + quarantined must equal the input size");
  ACCEPT_CHECK(run1.report.accepted == 90, "expected 90 accepted");
  ACCEPT_CHECK(run1.report.quarantined == 10, "expected 10 quarantined");

  std::multiset<std::string> in_ids, out_ids;
  for (const Record& r : corpus.records) in_ids.insert(r.id);
  for (const Record& r : run1.accepted.records) out_ids.insert(r.id);
  for (const Record& r : run1.quarantined.records) out_ids.insert(r.id);
  ACCEPT_CHECK(in_ids == out_ids, "id multiset must be preserved");

  ACCEPT_CHECK(snapshot(run1) == snapshot(run2), "two runs must be byte-identical");

  for (const Record& r : run1.accepted.records) {
    ACCEPT_CHECK(validate_trace(r.output).empty(), "accepted output fails validation");
  }
  return true;
}

bool criterion_translation_postprocessing(std::string& detail) {
  Record original;
  original.id = "orig";
  original.instruction = "Solve it";
  original.output = tf_test::park_model_trace();
  original.domain = "mathematics";
  original.source = "acceptance";

  std::string valid = original.output;
  std::string missing_close = valid;
  missing_close.erase(missing_close.rfind("</step>"), 7);
  std::string missing_open = valid;
  missing_open.erase(missing_open.find("<summary>"), 9);
  std::string reordered = valid;  // equal multiset, broken nesting
  {
    size_t begin = reordered.find("<plan>");
    size_t end = reordered.find("</plan>") + 7;
    std::string block = reordered.substr(begin, end - begin);
    reordered.erase(begin, end - begin);
    reordered.insert(reordered.find("</thoughts>"), block);
  }

  struct Fixture {
    std::string instruction;
    std::string output;
    TranslationStatus expected;
  };
  std::vector<Fixture> fixtures;
  // 5 clean acceptances.
  for (int i = 0; i < 5; ++i) fixtures.push_back({"คำสั่ง " + std::to_string(i), valid,
                                                  TranslationStatus::accepted});
  // 5 with strippable one-line prefixes.
  for (const char* prefix : {"Here is the translation:", "Translated content:", "ผลการแปล:",
                             "Translation:", "Output:"}) {
    fixtures.push_back({"คำสั่ง", std::string(prefix) + "\n" + valid,
                        TranslationStatus::accepted});
  }
  // 4 with tags leaking into the instruction.
  fixtures.push_back({"<thoughts>คำสั่ง</thoughts>", valid,
                      TranslationStatus::rejected_tags_in_instruction});
  fixtures.push_back({"คำสั่ง <step>", valid, TranslationStatus::rejected_tags_in_instruction});
  fixtures.push_back({"<response>x</response>", valid,
                      TranslationStatus::rejected_tags_in_instruction});
  fixtures.push_back({"ก่อน <plan> หลัง", valid, TranslationStatus::rejected_tags_in_instruction});
  // 4 structurally broken outputs.
  fixtures.push_back({"คำสั่ง", missing_close, TranslationStatus::rejected_tag_mismatch});
  fixtures.push_back({"คำสั่ง", missing_open, TranslationStatus::rejected_tag_mismatch});
  fixtures.push_back({"คำสั่ง", "tags all gone", TranslationStatus::rejected_tag_mismatch});
  fixtures.push_back({"คำสั่ง", reordered, TranslationStatus::rejected_tag_mismatch});
  // 2 with unremovable prefixes.
  fixtures.push_back({"คำสั่ง", "I made this translation\nacross two lines\n" + valid,
                      TranslationStatus::rejected_prefix_unremovable});
  fixtures.push_back({"คำสั่ง", "A paragraph without a colon marker\n" + valid,
                      TranslationStatus::rejected_prefix_unremovable});

  ACCEPT_CHECK(fixtures.size() == 20, "fixture set must have 20 cases");

  TranslateOptions options;
  options.prompt_template = "x {text}";
  for (size_t i = 0; i < fixtures.size(); ++i) {
    RawTranslation raw{fixtures[i].instruction, fixtures[i].output};
    TranslationVerdict verdict = postprocess(raw, original, options);
    if (verdict.status != fixtures[i].expected) {
      detail = "fixture " + std::to_string(i) + ": got " +
               std::string(translation_status_name(verdict.status)) + ", want " +
               std::string(translation_status_name(fixtures[i].expected));
      return false;
    }
    if (verdict.status == TranslationStatus::accepted) {
      ACCEPT_CHECK(validate_trace(verdict.cleaned->output).empty(),
                   "accepted fixture must pass validate_trace");
    }
  }
  return true;
}

bool criterion_rating_filter(std::string& detail) {
  Corpus c;
  for (double rating : {4.0, 4.25, 4.26, 5.0}) {
    Record r;
    r.id = "r" + std::to_string(c.size());
    r.instruction = "i";
    r.output = "o";
    r.domain = "instruction_following";
    r.source = "uf";
    r.rating = rating;
    c.records.push_back(std::move(r));
  }
  FilterReport report;
  Corpus kept = filter_by_rating(c, 4.25, &report);
  ACCEPT_CHECK(kept.size() == 2, "exactly 2 of {4.0,4.25,4.26,5.0} pass threshold 4.25");
  ACCEPT_CHECK(kept.records[0].rating == 4.26 && kept.records[1].rating == 5.0,
               "the strict inequality must drop the 4.25 boundary");
  ACCEPT_CHECK(report.dropped_below == 2, "filter report must count the dropped records");
  return true;
}

bool criterion_analytics(std::string& detail) {
  ACCEPT_CHECK(script_ratio("สวัสดี ab", Script::thai) == 0.75,
               "script_ratio fixture must be exactly 0.75");

  SplitMix64 rng(0xACCE5509);
  static const std::vector<std::string> pieces = {"สวัสดี", "ไทย", "ab", "Z", "42", " ", "."};
  for (int i = 0; i < 1000; ++i) {
    std::string text = "a";  // nonzero denominator by construction
    size_t n = rng.uniform_below(10);
    for (size_t k = 0; k < n; ++k) text += pieces[rng.uniform_below(pieces.size())];
    double sum = script_ratio(text, Script::thai) + script_ratio(text, Script::latin);
    ACCEPT_CHECK(std::abs(sum - 1.0) < 1e-12, "thai + latin ratios must sum to 1");
  }

  // 100-record fixture vs an independent recount.
  Corpus c;
  for (int i = 0; i < 100; ++i) {
    Record r;
    r.id = "s" + std::to_string(i);
    std::string instruction;
    for (int w = 0; w <= i % 5; ++w) instruction += "word ";
    r.instruction = instruction;
    if (i % 10 == 9) {
      r.output = "plain text output " + std::to_string(i);
    } else {
      ThoughtTrace t;
      t.plan = {{1, "plan"}};
      for (int s = 0; s < i % 7 + 1; ++s) {
        t.steps.push_back({s + 1, "t" + std::to_string(s), "work item " + std::to_string(s),
                           "", ""});
      }
      t.response = "answer " + std::to_string(i);
      r.output = render_trace(t);
    }
    r.domain = "other";
    r.source = "acceptance";
    c.records.push_back(std::move(r));
  }

  WhitespaceTokenizer tok;
  CorpusStats stats = corpus_stats(c, tok);

  // Brute-force oracle: istringstream extraction for tokens, construction
  // knowledge for steps.
  uint64_t instr_tokens = 0, out_tokens = 0, steps_total = 0;
  size_t max_steps = 0, unparsed = 0;
  for (int i = 0; i < 100; ++i) {
    std::istringstream is(c.records[i].instruction);
    std::string w;
    while (is >> w) ++instr_tokens;
    std::istringstream os(c.records[i].output);
    while (os >> w) ++out_tokens;
    if (i % 10 == 9) {
      ++unparsed;
    } else {
      size_t steps = static_cast<size_t>(i % 7 + 1);
      steps_total += steps;
      max_steps = std::max(max_steps, steps);
    }
  }
  ACCEPT_CHECK(stats.total_instruction_tokens == instr_tokens, "instruction token totals differ");
  ACCEPT_CHECK(stats.total_output_tokens == out_tokens, "output token totals differ");
  ACCEPT_CHECK(stats.total_tokens == instr_tokens + out_tokens, "grand total differs");
  ACCEPT_CHECK(stats.avg_instruction_tokens == static_cast<double>(instr_tokens) / 100.0,
               "instruction average differs");
  ACCEPT_CHECK(stats.avg_output_tokens == static_cast<double>(out_tokens) / 100.0,
               "output average differs");
  ACCEPT_CHECK(stats.total_steps == steps_total, "step totals differ");
  ACCEPT_CHECK(stats.avg_steps == static_cast<double>(steps_total) / 100.0,
               "step average differs");
  ACCEPT_CHECK(stats.max_steps == max_steps, "max steps differs");
  ACCEPT_CHECK(stats.unparsed_outputs == unparsed, "unparsed count differs");
  return true;
}

bool criterion_evaluation(std::string& detail) {
  struct Fixture {
    const char* text;
    const char* gold;
    bool correct;
  };
  // Hand-labeled against the default rules (last occurrence, response scope).
  const std::vector<Fixture> fixtures = {
      {"The answer is (B).", "B", true},
      {"maybe (A) but finally (C)", "C", true},
      {"The answer is (D).", "B", false},
      {"no letters at all", "A", false},
      {"answer is b", "B", true},
      {"I pick (E) then reconsider to (A)", "A", true},
      {"Answer is: (C)", "C", true},
      {"closing thought D.", "D", true},
      {"(A) (B) (C) (D)", "D", true},
      {"The answer is (e)", "E", true},
  };
  std::vector<EvalItem> items;
  for (size_t i = 0; i < fixtures.size(); ++i) {
    items.push_back({"item" + std::to_string(i), fixtures[i].text, fixtures[i].gold});
  }
  ScoreResult result = score(items, default_rules());
  for (size_t i = 0; i < fixtures.size(); ++i) {
    if (result.verdicts[i].correct != fixtures[i].correct) {
      detail = "item " + std::to_string(i) + " verdict mismatch";
      return false;
    }
  }

  // Decoys planted in the scratchpad never change extraction on valid traces.
  SplitMix64 rng(0xACCE550A);
  const char* letters = "ABCDE";
  std::vector<ExtractionRule> rule = {{R"(\(([A-E])\))", 1, ExtractionRule::Occurrence::last}};
  for (int i = 0; i < 100; ++i) {
    char answer = letters[rng.uniform_below(5)];
    char decoy = letters[rng.uniform_below(5)];
    ThoughtTrace t;
    t.plan = {{1, "pick"}};
    t.steps = {{1, "try", std::string("could be (") + decoy + ") or (" + decoy + ")", "", ""}};
    t.response = std::string("The answer is (") + answer + ").";
    auto got = extract_answer(render_trace(t), rule);
    ACCEPT_CHECK(got.has_value(), "extraction must find the response answer");
    ACCEPT_CHECK(*got == std::string(1, answer), "scratchpad decoy changed the extraction");
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string name;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "mixture arithmetic (100% -> 55,677; 75% -> 41,755; 50% -> 27,837)",
       criterion_mixture_arithmetic},
      {2, "leave-one-out totals for all five domains", criterion_leave_one_out},
      {3, "schema properties: 10k roundtrips, 10k fuzz inputs, violation fixtures",
       criterion_schema_properties},
      {4, "conversion equivalence across 1k generated traces", criterion_conversion_equivalence},
      {5, "synthesizer statistics at p=0.5 over 10k steps", criterion_synthesizer_statistics},
      {6, "pipeline determinism and conservation on the 100-record mock fixture",
       criterion_pipeline_conservation},
      {7, "translation post-processing verdicts on the 20-case fixture",
       criterion_translation_postprocessing},
      {8, "rating filter boundary at 4.25", criterion_rating_filter},
      {9, "analytics: script ratios and corpus_stats vs oracle", criterion_analytics},
      {10, "evaluation: extraction fixture and scratchpad decoys", criterion_evaluation},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ok) {
      std::cout << "PASS - criterion " << c.number << ": " << c.name << " (" << ms << " ms)\n";
    } else {
      ++failures;
      std::cout << "FAIL - criterion " << c.number << ": " << c.name << ": " << detail << "\n";
    }
  }
  if (failures == 0) {
    std::cout << "all " << criteria.size() << " acceptance criteria passed\n";
  } else {
    std::cout << failures << " acceptance criteria failed\n";
  }
  return failures;
}
