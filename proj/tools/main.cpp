// traceforge CLI: every pipeline stage as a subcommand over JSONL corpora.
// Reports go to a JSON sidecar; a short human summary goes to stdout.
// Exit codes: 0 success, 1 per-record failures present (quarantine/rejects
// written), 2 fatal error or bad usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

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

namespace {

using nlohmann::ordered_json;
using namespace traceforge;

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };
LogLevel g_log_level = LogLevel::info;

void log(LogLevel level, const std::string& msg) {
  if (level < g_log_level) return;
  static const char* names[] = {"debug", "info", "warn", "error"};
  std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

LogLevel parse_log_level(const std::string& name) {
  if (name == "debug") return LogLevel::debug;
  if (name == "info") return LogLevel::info;
  if (name == "warn") return LogLevel::warn;
  if (name == "error") return LogLevel::error;
  throw CLI::ValidationError("--log-level", "expected debug|info|warn|error");
}

void write_report(const std::filesystem::path& path, const ordered_json& report) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report to " + path.string());
  out << report.dump(2) << "\n";
}

std::filesystem::path sidecar_path(const std::string& explicit_path,
                                   const std::filesystem::path& anchor) {
  if (!explicit_path.empty()) return explicit_path;
  return anchor.string() + ".report.json";
}

// ---------------------------------------------------------------------------
// client plumbing shared by transform and translate

struct ClientFlags {
  std::string mock_file;
  std::string endpoint;
  std::string model;
  std::string api_path = "/v1/chat/completions";
};

void add_client_flags(CLI::App* cmd, ClientFlags& flags, const std::string& prefix = "") {
  cmd->add_option("--" + prefix + "mock", flags.mock_file,
                  "file-backed deterministic mock client (fingerprint -> response JSONL)");
  cmd->add_option("--" + prefix + "endpoint", flags.endpoint,
                  "chat-completion endpoint base URL (API key from TRACEFORGE_API_KEY)");
  cmd->add_option("--" + prefix + "model", flags.model, "model name for the endpoint");
}

std::unique_ptr<ChatClient> make_client(const ClientFlags& flags, const std::string& stage) {
  if (!flags.mock_file.empty()) {
    return std::make_unique<FileMockClient>(flags.mock_file);
  }
  if (flags.endpoint.empty()) {
    throw std::runtime_error(stage + ": provide --" + (stage == "refine" ? "refine-" : "") +
                             "endpoint or a --mock file");
  }
  HttpChatClient::Options options;
  options.base_url = flags.endpoint;
  options.path = flags.api_path;
  options.model = flags.model;
  if (const char* key = std::getenv("TRACEFORGE_API_KEY")) options.api_key = key;
  return std::make_unique<HttpChatClient>(options);
}

ordered_json violations_to_json(const std::vector<TraceViolation>& violations) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : violations) {
    arr.push_back({{"rule", std::string(trace_rule_name(v.rule))},
                   {"location", v.location},
                   {"detail", v.detail}});
  }
  return arr;
}

// ---------------------------------------------------------------------------
// subcommands

struct ValidateArgs {
  std::string input;
  bool traces = false;
  std::string report_path;
};

int cmd_validate(const ValidateArgs& args) {
  Corpus corpus = read_jsonl(args.input);
  auto record_violations = validate_corpus(corpus);

  ordered_json trace_reports = ordered_json::array();
  size_t invalid_traces = 0;
  if (args.traces) {
    for (size_t i = 0; i < corpus.records.size(); ++i) {
      auto v = validate_trace(corpus.records[i].output);
      if (v.empty()) continue;
      ++invalid_traces;
      trace_reports.push_back({{"index", i},
                               {"id", corpus.records[i].id},
                               {"violations", violations_to_json(v)}});
    }
  }

  ordered_json report;
  report["records"] = corpus.size();
  ordered_json rv = ordered_json::array();
  for (const auto& v : record_violations) {
    rv.push_back({{"index", v.index}, {"id", v.id}, {"field", v.violation.field},
                  {"rule", v.violation.rule}});
  }
  report["record_violations"] = std::move(rv);
  if (args.traces) report["trace_violations"] = std::move(trace_reports);
  write_report(sidecar_path(args.report_path, args.input), report);

  size_t failures = record_violations.size() + invalid_traces;
  std::cout << "validated " << corpus.size() << " records: " << record_violations.size()
            << " record violations";
  if (args.traces) std::cout << ", " << invalid_traces << " invalid traces";
  std::cout << "\n";
  return failures == 0 ? 0 : 1;
}

struct ConvertArgs {
  std::string from = "structured";
  std::string to;
  std::string input;
  std::string output;
  std::string report_path;
};

int cmd_convert(const ConvertArgs& args) {
  if (args.from != "structured") {
    throw std::runtime_error("only --from structured is supported (the inverse is ill-posed)");
  }
  Corpus corpus = read_jsonl(args.input);
  Corpus converted;
  Corpus quarantine;
  for (const Record& r : corpus.records) {
    try {
      Record out = r;
      out.output = (args.to == "semi") ? to_semi_structured(r.output)
                                       : to_unstructured(r.output);
      converted.records.push_back(std::move(out));
    } catch (const InvalidInputError& e) {
      Record q = r;
      q.meta["quarantine_reason"] = e.what();
      quarantine.records.push_back(std::move(q));
    }
  }
  write_jsonl(converted, args.output);
  std::filesystem::path qpath = args.output + ".quarantine.jsonl";
  if (!quarantine.empty()) write_jsonl(quarantine, qpath);

  ordered_json report;
  report["input_records"] = corpus.size();
  report["converted"] = converted.size();
  report["quarantined"] = quarantine.size();
  report["format"] = args.to;
  write_report(sidecar_path(args.report_path, args.output), report);

  std::cout << "converted " << converted.size() << "/" << corpus.size() << " records to "
            << args.to << (quarantine.empty() ? "" : " (quarantine: " + qpath.string() + ")")
            << "\n";
  return quarantine.empty() ? 0 : 1;
}

struct SynthesizeArgs {
  std::string input;
  std::string output;
  double p_incorrect = 0.5;
  uint64_t seed = 0;
  std::string domain = "mathematics";
  std::string source = "prm";
  std::string report_path;
};

int cmd_synthesize(const SynthesizeArgs& args) {
  auto problems = read_prm_jsonl(args.input);
  SynthConfig cfg = default_synth_config();
  cfg.p_incorrect = args.p_incorrect;
  cfg.seed = args.seed;

  Corpus out;
  ordered_json failures = ordered_json::array();
  for (const PrmProblem& p : problems) {
    try {
      Record r;
      r.id = p.id;
      r.instruction = p.problem;
      r.output = synthesize_response(p, cfg);
      r.domain = args.domain;
      r.source = args.source;
      out.records.push_back(std::move(r));
    } catch (const PrmInputError& e) {
      failures.push_back({{"id", p.id}, {"error", e.what()}});
    }
  }
  write_jsonl(out, args.output);

  ordered_json report;
  report["problems"] = problems.size();
  report["synthesized"] = out.size();
  report["failed"] = failures.size();
  report["p_incorrect"] = args.p_incorrect;
  report["seed"] = args.seed;
  report["failures"] = std::move(failures);
  write_report(sidecar_path(args.report_path, args.output), report);

  std::cout << "synthesized " << out.size() << "/" << problems.size() << " problems\n";
  return report["failed"].get<size_t>() == 0 ? 0 : 1;
}

struct MixArgs {
  std::string spec_path;
  int percent = 100;
  std::string leave_out;
  std::string output;
  std::optional<uint64_t> seed_override;
  std::string report_path;
};

int cmd_mix(const MixArgs& args) {
  MixtureSpec spec = read_mixture_spec(args.spec_path);
  if (args.seed_override) spec.seed = *args.seed_override;
  if (!args.leave_out.empty()) {
    auto domain = parse_domain(args.leave_out);
    if (!domain) throw std::runtime_error("unknown domain '" + args.leave_out + "'");
    spec = leave_one_out(spec, *domain);
  }
  if (args.percent != 100) spec = downsample(spec, args.percent);

  AssembleReport report;
  Corpus mixed = assemble(spec, &report);
  if (!args.output.empty()) write_jsonl(mixed, args.output);

  ordered_json j;
  j["spec"] = args.spec_path;
  j["percent"] = args.percent;
  if (!args.leave_out.empty()) j["leave_out"] = args.leave_out;
  j["seed"] = spec.seed;
  j["total"] = report.total;
  ordered_json parts = ordered_json::array();
  for (const PartReport& p : report.parts) {
    parts.push_back({{"name", p.name},
                     {"domain", p.domain},
                     {"read", p.read},
                     {"after_filter", p.after_filter},
                     {"dropped_missing_rating", p.dropped_missing_rating},
                     {"sampled", p.sampled}});
  }
  j["parts"] = std::move(parts);
  std::filesystem::path anchor = args.output.empty() ? args.spec_path : args.output;
  write_report(sidecar_path(args.report_path, anchor), j);

  std::cout << "assembled " << report.total << " records from " << report.parts.size()
            << " parts\n";
  return 0;
}

struct TransformArgs {
  std::string input;
  std::string output;
  ClientFlags transform_client;
  ClientFlags refine_client;
  std::vector<std::string> exemplars;
  bool always_refine = false;
  int max_refine_rounds = 2;
  int concurrency = 4;
  double transform_temperature = 0.7;
  double refine_temperature = 0.0;
  int max_tokens = 4096;
  int retries = 3;
  std::string report_path;
};

int cmd_transform(const TransformArgs& args) {
  Corpus corpus = read_jsonl(args.input);

  PipelineConfig cfg;
  std::vector<std::filesystem::path> exemplar_paths(args.exemplars.begin(),
                                                    args.exemplars.end());
  cfg.transform_exemplars = load_exemplars(exemplar_paths);
  cfg.refine_exemplars = cfg.transform_exemplars;
  cfg.always_refine = args.always_refine;
  cfg.max_refine_rounds = args.max_refine_rounds;
  cfg.concurrency = args.concurrency;
  cfg.transform_params = {args.transform_temperature, args.max_tokens};
  cfg.refine_params = {args.refine_temperature, args.max_tokens};
  cfg.transport_retries = args.retries;

  auto transform_client = make_client(args.transform_client, "transform");
  // The refinement model defaults to the transform settings.
  ClientFlags refine_flags = args.refine_client;
  if (refine_flags.mock_file.empty() && refine_flags.endpoint.empty()) {
    refine_flags = args.transform_client;
  }
  auto refine_client = make_client(refine_flags, "refine");

  log(LogLevel::info, "transforming " + std::to_string(corpus.size()) + " records with " +
                          std::to_string(cfg.concurrency) + " workers");
  PipelineResult result = run_pipeline(corpus, *transform_client, *refine_client, cfg);

  write_jsonl(result.accepted, args.output);
  std::filesystem::path qpath = args.output + ".quarantine.jsonl";
  if (!result.quarantined.empty()) write_jsonl(result.quarantined, qpath);

  ordered_json j;
  j["input_records"] = corpus.size();
  j["accepted"] = result.report.accepted;
  j["quarantined"] = result.report.quarantined;
  ordered_json reasons;
  for (const auto& [reason, count] : result.report.failure_reasons) reasons[reason] = count;
  j["failure_reasons"] = std::move(reasons);
  j["tokens"] = {{"transform", {{"prompt", result.report.transform_tokens.prompt},
                                {"completion", result.report.transform_tokens.completion}}},
                 {"refine", {{"prompt", result.report.refine_tokens.prompt},
                             {"completion", result.report.refine_tokens.completion}}}};
  write_report(sidecar_path(args.report_path, args.output), j);

  std::cout << "accepted " << result.report.accepted << "/" << corpus.size() << " records"
            << (result.quarantined.empty() ? "" : " (quarantine: " + qpath.string() + ")")
            << "\n";
  return result.report.quarantined == 0 ? 0 : 1;
}

struct TranslateArgs {
  std::string input;
  std::string output;
  std::string language = "Thai";
  std::string source_language = "English";
  std::string template_path;
  ClientFlags client;
  int concurrency = 4;
  int retries = 3;
  std::string report_path;
};

int cmd_translate(const TranslateArgs& args) {
  Corpus corpus = read_jsonl(args.input);

  TranslateOptions options;
  options.language = args.language;
  options.source_language = args.source_language;
  options.prompt_template = load_prompt_template(args.template_path);
  options.concurrency = args.concurrency;
  options.transport_retries = args.retries;

  auto client = make_client(args.client, "translate");
  log(LogLevel::info, "translating " + std::to_string(corpus.size()) + " records to " +
                          args.language);
  TranslateResult result = run_translation(corpus, *client, options);

  write_jsonl(result.accepted, args.output);
  std::filesystem::path rpath = args.output + ".rejected.jsonl";
  if (!result.rejected.empty()) write_jsonl(result.rejected, rpath);

  ordered_json j;
  j["input_records"] = corpus.size();
  j["accepted"] = result.report.accepted;
  j["rejected"] = result.report.rejected;
  j["acceptance_rate"] = corpus.empty() ? 0.0
                                        : static_cast<double>(result.report.accepted) /
                                              static_cast<double>(corpus.size());
  ordered_json statuses;
  for (const auto& [status, count] : result.report.by_status) statuses[status] = count;
  j["by_status"] = std::move(statuses);
  write_report(sidecar_path(args.report_path, args.output), j);

  std::cout << "accepted " << result.report.accepted << "/" << corpus.size()
            << " translations\n";
  return result.report.rejected == 0 ? 0 : 1;
}

struct StatsArgs {
  std::string input;
  std::string tokenizer = "whitespace";
  std::string script;
  std::string report_path;
};

int cmd_stats(const StatsArgs& args) {
  Corpus corpus = read_jsonl(args.input);
  std::unique_ptr<Tokenizer> tokenizer;
  if (args.tokenizer == "whitespace") {
    tokenizer = std::make_unique<WhitespaceTokenizer>();
  } else if (args.tokenizer == "chars") {
    tokenizer = std::make_unique<CodePointTokenizer>();
  } else {
    throw std::runtime_error("unknown tokenizer '" + args.tokenizer + "'");
  }
  CorpusStats stats = corpus_stats(corpus, *tokenizer);

  ordered_json j;
  j["records"] = stats.n_records;
  j["tokenizer"] = args.tokenizer;
  j["avg_instruction_tokens"] = stats.avg_instruction_tokens;
  j["avg_output_tokens"] = stats.avg_output_tokens;
  j["total_tokens"] = stats.total_tokens;
  j["max_steps"] = stats.max_steps;
  j["avg_steps"] = stats.avg_steps;
  j["unparsed_outputs"] = stats.unparsed_outputs;

  if (!args.script.empty()) {
    Script script;
    if (args.script == "thai") {
      script = Script::thai;
    } else if (args.script == "latin") {
      script = Script::latin;
    } else {
      throw std::runtime_error("unknown script '" + args.script + "'");
    }
    double sum = 0.0;
    size_t measured = 0;
    for (const Record& r : corpus.records) {
      if (!validate_trace(r.output).empty()) continue;
      sum += thoughts_script_ratio(r.output, script);
      ++measured;
    }
    j["thoughts_script"] = args.script;
    j["avg_thoughts_script_ratio"] = measured == 0 ? 0.0 : sum / static_cast<double>(measured);
    j["measured_traces"] = measured;
  }
  write_report(sidecar_path(args.report_path, args.input), j);

  std::cout << "records " << stats.n_records << ", avg instruction tokens "
            << stats.avg_instruction_tokens << ", avg output tokens " << stats.avg_output_tokens
            << ", max steps " << stats.max_steps << ", avg steps " << stats.avg_steps << "\n";
  return 0;
}

struct EvalArgs {
  std::string items_path;
  std::string rules_path;
  std::string report_path;
};

int cmd_eval(const EvalArgs& args) {
  auto items = read_eval_items(args.items_path);
  auto rules = args.rules_path.empty() ? default_rules() : load_rules(args.rules_path);
  ScoreResult result = score(items, rules);

  ordered_json j;
  j["items"] = items.size();
  j["accuracy"] = result.accuracy;
  ordered_json verdicts = ordered_json::array();
  for (const ItemVerdict& v : result.verdicts) {
    ordered_json e;
    e["id"] = v.id;
    if (v.extracted) e["extracted"] = *v.extracted;
    e["gold"] = v.gold;
    e["correct"] = v.correct;
    verdicts.push_back(std::move(e));
  }
  j["verdicts"] = std::move(verdicts);
  write_report(sidecar_path(args.report_path, args.items_path), j);

  size_t correct = 0;
  for (const auto& v : result.verdicts) correct += v.correct ? 1 : 0;
  std::cout << "accuracy " << result.accuracy << " (" << correct << "/" << items.size()
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"traceforge: corpus engineering for long-thinking SFT datasets"};
  app.require_subcommand(1);

  std::string log_level = "info";
  app.add_option("--log-level", log_level, "debug|info|warn|error")->capture_default_str();

  ValidateArgs validate_args;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check corpus records and traces");
  validate_cmd->add_option("input", validate_args.input, "input JSONL corpus")->required();
  validate_cmd->add_flag("--traces", validate_args.traces,
                         "also validate each record's output as a structured trace");
  validate_cmd->add_option("--report", validate_args.report_path, "report sidecar path");

  ConvertArgs convert_args;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "derive semi/unstructured thinking formats");
  convert_cmd->add_option("--from", convert_args.from, "source format")->capture_default_str();
  convert_cmd->add_option("--to", convert_args.to, "semi|unstructured")
      ->required()
      ->check(CLI::IsMember({"semi", "unstructured"}));
  convert_cmd->add_option("--in", convert_args.input, "input JSONL corpus")->required();
  convert_cmd->add_option("--out", convert_args.output, "output JSONL corpus")->required();
  convert_cmd->add_option("--report", convert_args.report_path, "report sidecar path");

  SynthesizeArgs synth_args;
  CLI::App* synth_cmd =
      app.add_subcommand("synthesize", "build self-correction traces from step-rated data");
  synth_cmd->add_option("--in", synth_args.input, "PRM-style problems JSONL")->required();
  synth_cmd->add_option("--out", synth_args.output, "output JSONL corpus")->required();
  synth_cmd->add_option("--p-incorrect", synth_args.p_incorrect,
                        "probability of taking an incorrect step")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--seed", synth_args.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--domain", synth_args.domain, "domain for emitted records")
      ->capture_default_str();
  synth_cmd->add_option("--source", synth_args.source, "source label for emitted records")
      ->capture_default_str();
  synth_cmd->add_option("--report", synth_args.report_path, "report sidecar path");

  MixArgs mix_args;
  uint64_t mix_seed = 0;
  CLI::App* mix_cmd = app.add_subcommand("mix", "assemble / downsample / ablate a mixture");
  mix_cmd->add_option("--spec", mix_args.spec_path, "mixture spec file")->required();
  mix_cmd->add_option("--percent", mix_args.percent,
                      "per-part downsampling percentage (presets: 75 50 25 10 5)")
      ->capture_default_str()
      ->check(CLI::Range(1, 100));
  mix_cmd->add_option("--leave-out", mix_args.leave_out, "remove one domain");
  mix_cmd->add_option("--out", mix_args.output, "write the assembled corpus here");
  CLI::Option* mix_seed_opt = mix_cmd->add_option("--seed", mix_seed, "override the spec seed");
  mix_cmd->add_option("--report", mix_args.report_path, "report sidecar path");

  TransformArgs transform_args;
  CLI::App* transform_cmd =
      app.add_subcommand("transform", "LLM transformation-and-refinement to structured traces");
  transform_cmd->add_option("--in", transform_args.input, "input JSONL corpus")->required();
  transform_cmd->add_option("--out", transform_args.output, "accepted records JSONL")->required();
  add_client_flags(transform_cmd, transform_args.transform_client);
  add_client_flags(transform_cmd, transform_args.refine_client, "refine-");
  transform_cmd
      ->add_option("--exemplar", transform_args.exemplars, "few-shot exemplar file (repeat)")
      ->required()
      ->expected(1, 8);
  transform_cmd->add_flag("--always-refine", transform_args.always_refine,
                          "refine every response, not only failing ones");
  transform_cmd->add_option("--max-refine-rounds", transform_args.max_refine_rounds, "")
      ->capture_default_str();
  transform_cmd->add_option("--concurrency", transform_args.concurrency, "worker count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  transform_cmd->add_option("--transform-temperature", transform_args.transform_temperature, "")
      ->capture_default_str();
  transform_cmd->add_option("--refine-temperature", transform_args.refine_temperature, "")
      ->capture_default_str();
  transform_cmd->add_option("--max-tokens", transform_args.max_tokens, "")->capture_default_str();
  transform_cmd->add_option("--retries", transform_args.retries, "transport retries")
      ->capture_default_str();
  transform_cmd->add_option("--report", transform_args.report_path, "report sidecar path");

  TranslateArgs translate_args;
  CLI::App* translate_cmd =
      app.add_subcommand("translate", "translate structured records with strict post-processing");
  translate_cmd->add_option("--in", translate_args.input, "input JSONL corpus")->required();
  translate_cmd->add_option("--out", translate_args.output, "accepted records JSONL")->required();
  translate_cmd->add_option("--lang", translate_args.language, "target language")
      ->capture_default_str();
  translate_cmd->add_option("--source-language", translate_args.source_language, "")
      ->capture_default_str();
  translate_cmd
      ->add_option("--spec", translate_args.template_path,
                   "translator prompt template file ({lang} and {text} slots)")
      ->required();
  add_client_flags(translate_cmd, translate_args.client);
  translate_cmd->add_option("--concurrency", translate_args.concurrency, "worker count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  translate_cmd->add_option("--retries", translate_args.retries, "transport retries")
      ->capture_default_str();
  translate_cmd->add_option("--report", translate_args.report_path, "report sidecar path");

  StatsArgs stats_args;
  CLI::App* stats_cmd = app.add_subcommand("stats", "corpus statistics report");
  stats_cmd->add_option("--in", stats_args.input, "input JSONL corpus")->required();
  stats_cmd->add_option("--tokenizer", stats_args.tokenizer, "whitespace|chars")
      ->capture_default_str()
      ->check(CLI::IsMember({"whitespace", "chars"}));
  stats_cmd->add_option("--script", stats_args.script,
                        "also report avg thoughts script ratio (thai|latin)")
      ->check(CLI::IsMember({"thai", "latin"}));
  stats_cmd->add_option("--report", stats_args.report_path, "report sidecar path");

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "regex extraction + exact-match scoring");
  eval_cmd->add_option("--items", eval_args.items_path, "JSONL of id/prediction_text/gold")
      ->required();
  eval_cmd->add_option("--rules", eval_args.rules_path,
                       "extraction rules JSON (default: built-in rules)");
  eval_cmd->add_option("--report", eval_args.report_path, "report sidecar path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    g_log_level = parse_log_level(log_level);
    if (validate_cmd->parsed()) return cmd_validate(validate_args);
    if (convert_cmd->parsed()) return cmd_convert(convert_args);
    if (synth_cmd->parsed()) return cmd_synthesize(synth_args);
    if (mix_cmd->parsed()) {
      if (mix_seed_opt->count() > 0) mix_args.seed_override = mix_seed;
      return cmd_mix(mix_args);
    }
    if (transform_cmd->parsed()) return cmd_transform(transform_args);
    if (translate_cmd->parsed()) return cmd_translate(translate_args);
    if (stats_cmd->parsed()) return cmd_stats(stats_args);
    if (eval_cmd->parsed()) return cmd_eval(eval_args);
  } catch (const std::exception& e) {
    log(LogLevel::error, e.what());
    return 2;
  }
  return 2;
}
