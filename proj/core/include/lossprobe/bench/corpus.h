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

#ifndef LOSSPROBE_BENCH_CORPUS_H_
#define LOSSPROBE_BENCH_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lossprobe/sim/app_spec.h"

namespace lossprobe::bench {

enum class Detectability { kSnapshotOnly, kPropertyOnly, kBoth, kCrash, kUndetectable };
std::string_view DetectabilityName(Detectability d);
std::optional<Detectability> ParseDetectability(std::string_view name);

struct ManifestFault {
  std::string fault_id;
  std::string activity;
  sim::FaultPattern pattern = sim::FaultPattern::kModifiedValue;
  std::optional<Detectability> detectable_by;  // filled by ground truth
  std::string exemplar;  // "drawer", "zoom" or empty
  std::optional<int> distance;  // navigation distance from the initial activity

  bool operator==(const ManifestFault&) const = default;
};

struct ManifestApp {
  std::string app_id;
  std::string spec_path;  // relative to the manifest's directory
  int activities = 0;
  std::vector<ManifestFault> faults;

  bool operator==(const ManifestApp&) const = default;
};

struct CorpusManifest {
  uint64_t seed = 0;
  std::vector<ManifestApp> apps;

  const ManifestApp* FindApp(std::string_view id) const;
  bool operator==(const CorpusManifest&) const = default;
};

std::string SerializeManifest(const CorpusManifest& m);
CorpusManifest ParseManifest(const std::string& text);  // Error(kParse)

struct CorpusOptions {
  int count = 10;
  uint64_t seed = 1;
  std::map<sim::FaultPattern, double> mix = {
      {sim::FaultPattern::kCrash, 1.0},           {sim::FaultPattern::kDestroyedElement, 1.0},
      {sim::FaultPattern::kPhantomElement, 1.0},  {sim::FaultPattern::kModifiedValue, 1.0},
      {sim::FaultPattern::kCompromisedState, 1.0}};
  int min_activities = 2;
  int max_activities = 15;
  // Faults per app, each on a distinct activity.
  int min_faults = 1;
  int max_faults = 3;
  // Probability that a fault is armed by a local toggle instead of always.
  double conditional_arming = 0.0;
  // Inject the two single-strategy exemplars (needs MODIFIED_VALUE weight).
  bool exemplars = true;
  sim::ScreenSpec screen;
};

struct GeneratedApp {
  std::string app_id;
  sim::AppSpec spec;
};

struct Corpus {
  std::vector<GeneratedApp> apps;
  CorpusManifest manifest;
};

// Throws Error(kInvalidMix) for negative, non-finite or all-zero weights
// and Error(kSpecInvalid) for inconsistent size options.
Corpus GenerateCorpus(const CorpusOptions& options);

// Writes <dir>/apps/<id>.json and <dir>/manifest.json.
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir);

// Stand-alone exemplar apps: a navigation-drawer toggle whose content
// description flips, and a map whose zoom level only shows in pixels.
sim::AppSpec DrawerExemplarApp();
sim::AppSpec ZoomExemplarApp();

}  // namespace lossprobe::bench

#endif  // LOSSPROBE_BENCH_CORPUS_H_
