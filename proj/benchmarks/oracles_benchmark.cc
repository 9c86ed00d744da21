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

#include "lossprobe/oracles/oracles.h"
#include "lossprobe/sim/app_instance.h"
#include "lossprobe/sim/app_spec_io.h"

namespace lossprobe {
namespace {

void BM_CompareSnapshots(benchmark::State& state) {
  sim::GrayImage a(720, 1280, 30);
  sim::GrayImage b = a;
  for (size_t i = 0; i < b.pixels.size(); i += 97) b.pixels[i] = 200;
  const oracles::Snapshot sa = oracles::CaptureSnapshot(a, 64, 64);
  const oracles::Snapshot sb = oracles::CaptureSnapshot(b, 64, 64);
  for (auto _ : state) benchmark::DoNotOptimize(oracles::CompareSnapshots(sa, sb));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(sa.pixels.size()));
}
BENCHMARK(BM_CompareSnapshots);

void BM_CaptureSnapshot(benchmark::State& state) {
  const sim::GrayImage a(720, 1280, 30);
  oracles::Snapshot out;
  for (auto _ : state) {
    oracles::CaptureSnapshot(a, 64, 64, out);
    benchmark::DoNotOptimize(out.pixels.data());
  }
}
BENCHMARK(BM_CaptureSnapshot);

// A complete tree of the given fan-out and depth.
oracles::PropertyNode Tree(int fanout, int depth) {
  oracles::PropertyNode n;
  n.text = "node";
  n.size = "100*100";
  if (depth > 0) {
    for (int i = 0; i < fanout; ++i) n.children.push_back(Tree(fanout, depth - 1));
  }
  n.child_count = static_cast<int>(n.children.size());
  return n;
}

void BM_CompareProperties(benchmark::State& state) {
  oracles::PropertyTree a;
  a.root = Tree(4, static_cast<int>(state.range(0)));
  const oracles::PropertyTree b = a;
  for (auto _ : state) benchmark::DoNotOptimize(oracles::CompareProperties(a, b));
}
BENCHMARK(BM_CompareProperties)->DenseRange(2, 6, 2);

}  // namespace
}  // namespace lossprobe
