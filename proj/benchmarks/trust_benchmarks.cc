/*
 * Copyright 2026 The Trust Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "trust/explainer.h"
#include "trust/mmg.h"
#include "trust/modesearch.h"
#include "trust/primary_model.h"
#include "trust/synth.h"

namespace trust {
namespace {

std::vector<double> Bimodal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> v(n);
  for (double& x : v) x = (coin(rng) ? 6.0 : 0.0) + normal(rng);
  return v;
}

void BM_FitEm(benchmark::State& state) {
  const std::vector<double> v = Bimodal(static_cast<std::size_t>(state.range(0)), 1);
  const int modes = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(FitEm(v, modes, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitEm)->Args({1000, 2})->Args({10000, 2})->Args({10000, 8});

void ModeSearch(benchmark::State& state, bool fast) {
  const std::vector<std::vector<double>> values = {Bimodal(2000, 2), Bimodal(2000, 3)};
  const SearchZone zone = SearchZone::Uniform(2, 1, static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    CandidateScorer scorer(values, 11);
    benchmark::DoNotOptimize(fast ? FastGridSelect(scorer, zone) : GridModeSelect(scorer, zone));
  }
}
void BM_FastGridSelect(benchmark::State& state) { ModeSearch(state, true); }
void BM_GridModeSelect(benchmark::State& state) { ModeSearch(state, false); }
BENCHMARK(BM_FastGridSelect)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridModeSelect)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

const TrustCore& SharedCore() {
  static const TrustCore core = [] {
    const LabeledDataset train = GenerateSynthetic(SeparableSuiteSpec(4000), 3);
    const ReferenceClassifier model = ReferenceClassifier::Fit(train);
    BuildOptions options;
    options.k = 2;
    options.zone = SearchZone::Uniform(2, 1, 10, 5);
    return BuildCore(MakeLabeled(train.data, model.Predict(train.data), 2), options);
  }();
  return core;
}

void BM_ExplainBatch(benchmark::State& state) {
  const TrustCore& core = SharedCore();
  const LabeledDataset batch =
      GenerateSynthetic(SeparableSuiteSpec(static_cast<std::size_t>(state.range(0))), 4);
  for (auto _ : state) benchmark::DoNotOptimize(ExplainBatch(core, batch.data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExplainBatch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace trust

BENCHMARK_MAIN();
