#include <benchmark/benchmark.h>

#include <random>

#include "judge/backend/backend.hpp"
#include "judge/retrieval/retriever.hpp"

using namespace judge;

namespace {

model::Trajectory marker_trajectory(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution pre(0.1), ev(0.1);
  model::Trajectory t;
  std::string previous = "launcher";
  for (std::size_t i = 1; i <= n; ++i) {
    model::Step step;
    step.index = i;
    step.action = "tap";
    step.target = "control " + std::to_string(i);
    std::string post = "state " + std::to_string(i);
    if (pre(rng)) post += " KP:PRECOND";
    if (ev(rng)) post += " KP:EVIDENCE";
    step.pre_text = previous;
    step.post_text = post;
    step.pre_image.inline_bytes = "pre";
    step.post_image.inline_bytes = "post";
    previous = post;
    t.steps.push_back(std::move(step));
  }
  return t;
}

void BM_RetrieveSegments(benchmark::State& state) {
  const auto t = marker_trajectory(static_cast<std::size_t>(state.range(0)), 42);
  backend::MockBackend mock;
  for (auto _ : state) {
    auto result = retrieval::retrieve_segments(t, model::TestBasis{}, mock);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RetrieveSegments)->Arg(10)->Arg(50)->Arg(500);

}  // namespace
