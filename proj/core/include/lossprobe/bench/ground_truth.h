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

#ifndef LOSSPROBE_BENCH_GROUND_TRUTH_H_
#define LOSSPROBE_BENCH_GROUND_TRUTH_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "lossprobe/bench/corpus.h"
#include "lossprobe/model/gui_model.h"
#include "lossprobe/oracles/oracles.h"
#include "lossprobe/sim/app_spec.h"

namespace lossprobe::bench {

struct GroundTruthOptions {
  // Concrete instance states explored before giving up.
  int64_t max_nodes = 200000;
  // Seed for the SET_TEXT fill values used as the text-entry payload.
  uint64_t fill_seed = 0;
};

struct GroundTruth {
  // Every fault of the app; kUndetectable when no check ever exposes it.
  std::map<std::string, Detectability> labels;
  std::map<std::string, std::set<oracles::Strategy>> strategies;
  std::set<model::AbstractState> abstract_states;
  // Shortest navigation distance of each reachable activity.
  std::map<std::string, int> activity_distance;
  int64_t nodes = 0;
  int64_t checks = 0;
};

// Exhaustive breadth-first search over complete instance states: every
// enabled event (text entry with a fill value), a capture / double
// rotation / compare at every state, and relaunch after crashes. Throws
// Error(kStateSpaceTooLarge) past options.max_nodes, Error(kStartCrash)
// if the app cannot launch.
GroundTruth EvaluateGroundTruth(const sim::AppSpec& app, const GroundTruthOptions& options = {});

// Copies labels and distances into the app's manifest entry.
void Annotate(ManifestApp& entry, const GroundTruth& truth);

}  // namespace lossprobe::bench

#endif  // LOSSPROBE_BENCH_GROUND_TRUTH_H_
