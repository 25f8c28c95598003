#include "traceforge/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "traceforge/unicode.hpp"
#include "worker_pool.hpp"

#include "json.hpp"

namespace traceforge {

namespace {

constexpr std::string_view kTransformSystem =
    "You rewrite a reference answer into a structured thinking response. "
    "The response must contain exactly one <thoughts> block followed by exactly one "
    "<response> block. Inside <thoughts>, start with a <plan> holding only <step> "
    "entries, then write the reasoning as <step> blocks that each contain <title>, "
    "<scratch_pad>, <summary>, and <next_step>. Put the final answer inside "
    "<response>. Emit nothing outside these tags.";

constexpr std::string_view kRefineSystem =
    "You repair structured thinking responses. Correct formatting issues against "
    "the required tag structure, fill in missing content, and improve the response "
    "quality based on the generated thoughts without losing information.";

void append_exemplars(std::string& out, const std::vector<std::string>& exemplars) {
  for (size_t i = 0; i < exemplars.size(); ++i) {
    out += "Example " + std::to_string(i + 1) + ":\n";
    out += exemplars[i];
    out += "\n\n";
  }
}

uint64_t message_tokens(const std::vector<ChatMessage>& messages) {
  uint64_t n = 0;
  for (const ChatMessage& m : messages) n += count_whitespace_tokens(m.text);
  return n;
}

std::string violations_json(const std::vector<TraceViolation>& violations) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TraceViolation& v : violations) {
    arr.push_back({{"rule", std::string(trace_rule_name(v.rule))},
                   {"location", v.location},
                   {"detail", v.detail}});
  }
  return arr.dump();
}

}  // namespace

std::vector<ChatMessage> transform_prompt(const Record& r, const PipelineConfig& cfg) {
  std::string user;
  append_exemplars(user, cfg.transform_exemplars);
  user += "Instruction:\n";
  user += r.instruction;
  user += "\n\nReference answer:\n";
  user += r.output;
  user +=
      "\n\nRewrite the reference answer as a structured thinking response to the "
      "instruction. Keep every fact from the reference answer, expand the reasoning "
      "into plan and steps, and place the final answer inside <response>.";
  return {{Role::system, std::string(kTransformSystem)}, {Role::user, std::move(user)}};
}

std::vector<ChatMessage> refine_prompt(std::string_view candidate, const Record& r,
                                       const PipelineConfig& cfg) {
  std::string user;
  append_exemplars(user, cfg.refine_exemplars);
  user += "Instruction:\n";
  user += r.instruction;
  user += "\n\nReference answer:\n";
  user += r.output;
  user += "\n\nDraft response:\n";
  user += candidate;
  user +=
      "\n\nRewrite the draft into a valid structured thinking response: fix the tag "
      "structure, fill in anything missing from the reference answer, and keep the "
      "final answer inside <response>.";
  return {{Role::system, std::string(kRefineSystem)}, {Role::user, std::move(user)}};
}

std::string transform(const Record& r, ChatClient& client, const PipelineConfig& cfg) {
  try {
    return client.complete(transform_prompt(r, cfg), cfg.transform_params);
  } catch (const TransportError& e) {
    throw TransportError("record '" + r.id + "': " + e.what());
  }
}

std::string refine(std::string_view candidate, const Record& r, ChatClient& client,
                   const PipelineConfig& cfg) {
  try {
    return client.complete(refine_prompt(candidate, r, cfg), cfg.refine_params);
  } catch (const TransportError& e) {
    throw TransportError("record '" + r.id + "': " + e.what());
  }
}

namespace {

struct Outcome {
  bool accepted = false;
  Record record;
  std::string failure_reason;
  StageTokens transform_tokens;
  StageTokens refine_tokens;
};

}  // namespace

PipelineResult run_pipeline(const Corpus& corpus, ChatClient& transform_client,
                            ChatClient& refine_client, const PipelineConfig& cfg) {
  const size_t n = corpus.size();
  std::vector<Outcome> outcomes(n);

  detail::parallel_for_indexed(n, cfg.concurrency, [&](size_t i) {
    const Record& input = corpus.records[i];
    Outcome& out = outcomes[i];
    out.record = input;

    const auto with_retry = [&](auto&& call) -> std::string {
      int delay_ms = cfg.retry_initial_delay_ms;
      for (int attempt = 0;; ++attempt) {
        try {
          return call();
        } catch (const TransportError&) {
          if (attempt >= cfg.transport_retries) throw;
          if (delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
          delay_ms *= 2;
        }
      }
    };

    try {
      // Token totals count every attempt, including retried ones.
      std::string candidate = with_retry([&] {
        auto messages = transform_prompt(input, cfg);
        out.transform_tokens.prompt += message_tokens(messages);
        std::string completion = transform_client.complete(messages, cfg.transform_params);
        out.transform_tokens.completion += count_whitespace_tokens(completion);
        return completion;
      });

      int rounds = 0;
      const auto refine_once = [&] {
        candidate = with_retry([&] {
          auto messages = refine_prompt(candidate, input, cfg);
          out.refine_tokens.prompt += message_tokens(messages);
          std::string completion = refine_client.complete(messages, cfg.refine_params);
          out.refine_tokens.completion += count_whitespace_tokens(completion);
          return completion;
        });
        ++rounds;
      };

      if (cfg.always_refine && cfg.max_refine_rounds >= 1) refine_once();

      std::vector<TraceViolation> violations = validate_trace(candidate);
      while (!violations.empty() && rounds < cfg.max_refine_rounds) {
        refine_once();
        violations = validate_trace(candidate);
      }

      if (violations.empty()) {
        out.accepted = true;
        out.record.output = render_trace(parse_trace(candidate));
      } else {
        out.failure_reason = std::string(trace_rule_name(violations.front().rule));
        out.record.meta["quarantine_reason"] = out.failure_reason;
        out.record.meta["violations"] = violations_json(violations);
      }
    } catch (const TransportError& e) {
      out.failure_reason = "transport_error";
      out.record.meta["quarantine_reason"] = "transport_error";
      out.record.meta["error"] = e.what();
    } catch (const std::exception& e) {
      // Nothing may escape a worker thread; unexpected client failures
      // quarantine the record instead of tearing down the run.
      out.failure_reason = "client_error";
      out.record.meta["quarantine_reason"] = "client_error";
      out.record.meta["error"] = e.what();
    }
  });

  PipelineResult result;
  for (Outcome& out : outcomes) {
    result.report.transform_tokens.prompt += out.transform_tokens.prompt;
    result.report.transform_tokens.completion += out.transform_tokens.completion;
    result.report.refine_tokens.prompt += out.refine_tokens.prompt;
    result.report.refine_tokens.completion += out.refine_tokens.completion;
    if (out.accepted) {
      ++result.report.accepted;
      result.accepted.records.push_back(std::move(out.record));
    } else {
      ++result.report.quarantined;
      ++result.report.failure_reasons[out.failure_reason];
      result.quarantined.records.push_back(std::move(out.record));
    }
  }
  return result;
}

std::vector<std::string> load_exemplars(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::string> out;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open exemplar file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    out.push_back(std::move(os).str());
  }
  return out;
}

}  // namespace traceforge
