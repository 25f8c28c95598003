#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "traceforge/analytics.hpp"
#include "traceforge/convert.hpp"
#include "traceforge/prm.hpp"
#include "traceforge/rng.hpp"
#include "traceforge/schema.hpp"

using namespace traceforge;

namespace {

ThoughtTrace sized_trace(size_t steps) {
  ThoughtTrace t;
  for (size_t i = 0; i < 4; ++i) {
    t.plan.push_back({static_cast<int>(i) + 1, "plan entry number " + std::to_string(i)});
  }
  for (size_t i = 0; i < steps; ++i) {
    t.steps.push_back({static_cast<int>(i) + 1,
                       "step title " + std::to_string(i),
                       "scratch work with some math like 3*x + 7 = 42 and commentary that "
                       "stretches the content a little further " + std::to_string(i),
                       "progress summary " + std::to_string(i),
                       "next step " + std::to_string(i)});
  }
  t.response = "the final answer with a short explanation attached";
  return t;
}

void BM_ParseTrace(benchmark::State& state) {
  std::string text = render_trace(sized_trace(static_cast<size_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_trace(text));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTrace)->Arg(4)->Arg(16)->Arg(64);

void BM_ValidateFuzz(benchmark::State& state) {
  SplitMix64 rng(1);
  std::vector<std::string> inputs;
  for (int i = 0; i < 64; ++i) {
    inputs.push_back(render_trace(sized_trace(8)) + (i % 2 ? "<step>" : ""));
  }
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_trace(inputs[k++ % inputs.size()]));
  }
}
BENCHMARK(BM_ValidateFuzz);

void BM_RenderTrace(benchmark::State& state) {
  ThoughtTrace t = sized_trace(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(render_trace(t));
  }
}
BENCHMARK(BM_RenderTrace)->Arg(4)->Arg(64);

void BM_CanonicalText(benchmark::State& state) {
  std::string semi = to_semi_structured(render_trace(sized_trace(16)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_text(semi));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * semi.size()));
}
BENCHMARK(BM_CanonicalText);

void BM_ScriptRatio(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 200; ++i) text += "สวัสดีครับ hello world ";
  for (auto _ : state) {
    benchmark::DoNotOptimize(script_ratio(text, Script::thai));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ScriptRatio);

void BM_SynthesizeResponse(benchmark::State& state) {
  PrmProblem p;
  p.id = "bench";
  p.problem = "problem";
  p.gold_answer = "answer";
  for (int s = 0; s < 8; ++s) {
    PrmStep step;
    step.candidates.push_back({"a correct candidate with typical sentence length", true});
    step.candidates.push_back({"an incorrect candidate with typical sentence length", false});
    p.steps.push_back(std::move(step));
  }
  SynthConfig cfg = default_synth_config();
  cfg.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize_response(p, cfg));
  }
}
BENCHMARK(BM_SynthesizeResponse);

void BM_SampleIndices(benchmark::State& state) {
  for (auto _ : state) {
    SplitMix64 rng(17);
    benchmark::DoNotOptimize(sample_indices(rng, 55677, 41755));
  }
}
BENCHMARK(BM_SampleIndices);

}  // namespace

BENCHMARK_MAIN();
