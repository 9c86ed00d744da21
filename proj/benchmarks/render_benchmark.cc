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

#include "lossprobe/bench/corpus.h"
#include "lossprobe/sim/app_instance.h"

namespace lossprobe {
namespace {

sim::AppInstance LargestCorpusApp() {
  bench::CorpusOptions opt;
  opt.count = 1;
  opt.seed = 11;
  opt.min_activities = 15;
  opt.max_activities = 15;
  opt.exemplars = false;
  return sim::AppInstance::Load(bench::GenerateCorpus(opt).apps[0].spec, 1);
}

void BM_Render(benchmark::State& state) {
  const sim::AppInstance inst = LargestCorpusApp();
  sim::GrayImage frame;
  int64_t n = 0;
  for (auto _ : state) {
    sim::Render(inst.State(), n++, frame);
    benchmark::DoNotOptimize(frame.pixels.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Render);

void BM_DumpHierarchy(benchmark::State& state) {
  const sim::AppInstance inst = LargestCorpusApp();
  for (auto _ : state) benchmark::DoNotOptimize(sim::DumpHierarchy(inst.State()));
}
BENCHMARK(BM_DumpHierarchy);

void BM_DoubleRotation(benchmark::State& state) {
  sim::AppInstance inst = LargestCorpusApp();
  for (auto _ : state) {
    inst.Rotate();
    inst.Rotate();
  }
}
BENCHMARK(BM_DoubleRotation);

}  // namespace
}  // namespace lossprobe
