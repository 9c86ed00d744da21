// Copyright 2026 The LossProbe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <memory>

#include "lossprobe/bench/corpus.h"
#include "lossprobe/bench/ground_truth.h"
#include "lossprobe/explorer/explorer.h"

namespace lossprobe {
namespace {

std::shared_ptr<const sim::AppSpec> CorpusApp(int activities) {
  bench::CorpusOptions opt;
  opt.count = 1;
  opt.seed = 21;
  opt.min_activities = activities;
  opt.max_activities = activities;
  opt.exemplars = false;
  return std::make_shared<const sim::AppSpec>(bench::GenerateCorpus(opt).apps[0].spec);
}

// Range: action budget.
void BM_Campaign(benchmark::State& state) {
  const auto app = CorpusApp(8);
  explorer::ExplorerConfig c;
  c.max_actions = state.range(0);
  c.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(explorer::RunCampaign(app, c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Campaign)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_GenerateCorpus(benchmark::State& state) {
  bench::CorpusOptions opt;
  opt.count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bench::GenerateCorpus(opt));
}
BENCHMARK(BM_GenerateCorpus)->Arg(50)->Unit(benchmark::kMillisecond);

// Range: activities.
void BM_GroundTruth(benchmark::State& state) {
  const auto app = CorpusApp(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bench::EvaluateGroundTruth(*app));
}
BENCHMARK(BM_GroundTruth)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lossprobe
