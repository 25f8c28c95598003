#include "traceforge/prm.hpp"

#include <fstream>

#include "traceforge/rng.hpp"
#include "traceforge/schema.hpp"
#include "traceforge/unicode.hpp"

#include "json.hpp"

namespace traceforge {

const std::vector<std::string>& default_reflection_templates() {
  static const std::vector<std::string> templates = {
      "Wait, this step is incorrect: {step} Let me reconsider and take a different approach.",
      "Hmm, something is off with that step: {step} I should rework it before moving on.",
      "On reflection, the step \"{step}\" contains an error. Let me redo this step."};
  return templates;
}

SynthConfig default_synth_config() {
  SynthConfig cfg;
  cfg.reflection_templates = default_reflection_templates();
  return cfg;
}

namespace {

std::string fill_template(const std::string& tmpl, const std::string& step_text) {
  const std::string slot = "{step}";
  size_t pos = tmpl.find(slot);
  if (pos == std::string::npos) return tmpl + " " + step_text;
  return tmpl.substr(0, pos) + step_text + tmpl.substr(pos + slot.size());
}

void validate_inputs(const PrmProblem& p, const SynthConfig& cfg) {
  if (p.id.empty()) throw PrmInputError("problem id is empty");
  if (trim_view(p.problem).empty()) throw PrmInputError("problem '" + p.id + "': statement is empty");
  if (trim_view(p.gold_answer).empty()) {
    throw PrmInputError("problem '" + p.id + "': gold answer is empty");
  }
  if (p.steps.empty()) throw PrmInputError("problem '" + p.id + "': no steps");
  for (size_t i = 0; i < p.steps.size(); ++i) {
    bool any_correct = false;
    for (const PrmCandidate& c : p.steps[i].candidates) any_correct |= c.correct;
    if (!any_correct) {
      throw PrmInputError("problem '" + p.id + "': step " + std::to_string(i + 1) +
                          " has no correct candidate");
    }
  }
  if (!(cfg.p_incorrect >= 0.0 && cfg.p_incorrect <= 1.0)) {
    throw PrmInputError("p_incorrect must lie in [0,1]");
  }
  if (cfg.reflection_templates.empty()) throw PrmInputError("no reflection templates");
}

}  // namespace

std::string synthesize_response(const PrmProblem& p, const SynthConfig& cfg) {
  validate_inputs(p, cfg);
  SplitMix64 rng = derive_stream(cfg.seed, p.id);

  ThoughtTrace trace;
  for (size_t i = 0; i < p.steps.size(); ++i) {
    trace.plan.push_back({static_cast<int>(i) + 1, "Step " + std::to_string(i + 1)});
  }

  const auto emit = [&trace](std::string title, std::string scratch, std::string next) {
    ReasoningStep s;
    s.index = static_cast<int>(trace.steps.size()) + 1;
    s.title = std::move(title);
    s.scratch_pad = std::move(scratch);
    s.next_step = std::move(next);
    trace.steps.push_back(std::move(s));
  };

  for (size_t i = 0; i < p.steps.size(); ++i) {
    const PrmStep& step = p.steps[i];
    std::vector<size_t> correct, incorrect;
    for (size_t c = 0; c < step.candidates.size(); ++c) {
      (step.candidates[c].correct ? correct : incorrect).push_back(c);
    }
    const std::string label = "Step " + std::to_string(i + 1);
    const std::string next = (i + 1 < p.steps.size())
                                 ? "Proceed to step " + std::to_string(i + 2) + "."
                                 : "Finalize the answer.";

    // One bernoulli draw per step regardless of branch availability keeps
    // the stream layout stable across inputs with and without incorrect
    // candidates.
    const bool take_incorrect = rng.bernoulli(cfg.p_incorrect) && !incorrect.empty();
    if (take_incorrect) {
      const std::string& bad =
          step.candidates[incorrect[rng.uniform_below(incorrect.size())]].text;
      const std::string& tmpl =
          cfg.reflection_templates[rng.uniform_below(cfg.reflection_templates.size())];
      const std::string& good =
          step.candidates[correct[rng.uniform_below(correct.size())]].text;
      emit(label, bad, "Check this step before continuing.");
      emit("Reflection on step " + std::to_string(i + 1), fill_template(tmpl, bad),
           "Retry step " + std::to_string(i + 1) + ".");
      emit(label + " (corrected)", good, next);
    } else {
      const std::string& good =
          step.candidates[correct[rng.uniform_below(correct.size())]].text;
      emit(label, good, next);
    }
  }

  trace.response = p.gold_answer;
  return render_trace(trace);
}

std::vector<PrmProblem> read_prm_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PrmInputError("cannot open " + path.string());
  std::vector<PrmProblem> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_view(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw PrmInputError(path.string() + ": malformed JSON at line " + std::to_string(line_no));
    }
    try {
      PrmProblem p;
      p.id = j.at("id").get<std::string>();
      p.problem = j.at("problem").get<std::string>();
      p.gold_answer = j.at("gold_answer").get<std::string>();
      for (const auto& js : j.at("steps")) {
        PrmStep step;
        for (const auto& jc : js.at("candidates")) {
          PrmCandidate c;
          c.text = jc.at("text").get<std::string>();
          std::string label = jc.at("label").get<std::string>();
          if (label != "correct" && label != "incorrect") {
            throw PrmInputError("label must be 'correct' or 'incorrect'");
          }
          c.correct = (label == "correct");
          step.candidates.push_back(std::move(c));
        }
        p.steps.push_back(std::move(step));
      }
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw PrmInputError(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Corpus synthesize_corpus(const std::vector<PrmProblem>& problems, const SynthConfig& cfg,
                         const std::string& domain, const std::string& source) {
  Corpus corpus;
  corpus.records.reserve(problems.size());
  for (const PrmProblem& p : problems) {
    Record r;
    r.id = p.id;
    r.instruction = p.problem;
    r.output = synthesize_response(p, cfg);
    r.domain = domain;
    r.source = source;
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

}  // namespace traceforge
