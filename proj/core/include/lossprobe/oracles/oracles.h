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

#ifndef LOSSPROBE_ORACLES_ORACLES_H_
#define LOSSPROBE_ORACLES_ORACLES_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lossprobe/oracles/property_tree.h"
#include "lossprobe/sim/image.h"

namespace lossprobe::oracles {

// Cropped grayscale screenshot.
struct Snapshot {
  int width = 0;
  int height = 0;  // rows kept after cropping
  int crop_header = 0;
  int crop_footer = 0;
  std::vector<uint8_t> pixels;

  bool operator==(const Snapshot&) const = default;
};

// ITU-R BT.601 luma, rounded to nearest.
uint8_t Luma(sim::Rgb p);

// Throws Error(kCropTooLarge) unless crop_header + crop_footer < height.
Snapshot CaptureSnapshot(const sim::GrayImage& image, int crop_header, int crop_footer);
Snapshot CaptureSnapshot(const sim::RgbImage& image, int crop_header, int crop_footer);
// Same as the gray overload, reusing the pixel storage of `out`.
void CaptureSnapshot(const sim::GrayImage& image, int crop_header, int crop_footer, Snapshot& out);

// The retained rows as an image, for persisting.
sim::GrayImage SnapshotImage(const Snapshot& s);

enum class Outcome { kPass, kFail };
enum class Strategy { kSnapshot, kProperty };
enum class OracleMode { kSnapshot, kProperty, kBoth };

std::string_view OutcomeName(Outcome o);
std::string_view StrategyName(Strategy s);
std::string_view OracleModeName(OracleMode m);
std::optional<Strategy> ParseStrategy(std::string_view name);
std::optional<OracleMode> ParseOracleMode(std::string_view name);

inline bool Uses(OracleMode mode, Strategy s) {
  return mode == OracleMode::kBoth ||
         (mode == OracleMode::kSnapshot) == (s == Strategy::kSnapshot);
}

struct Verdict {
  Outcome outcome = Outcome::kPass;
  Strategy strategy = Strategy::kSnapshot;
  // Snapshot evidence.
  int64_t differing = 0;
  int64_t total = 0;
  // Property evidence: slash-separated child indices from the root ("" for
  // the root itself) and the first differing field.
  std::string path;
  std::string field;

  bool failed() const { return outcome == Outcome::kFail; }
  bool operator==(const Verdict&) const = default;
};

// More than 15 differing pixels every 10,000 fails. Throws
// Error(kDimensionMismatch).
inline constexpr int64_t kThresholdPixels = 15;
inline constexpr int64_t kThresholdPer = 10000;
Verdict CompareSnapshots(const Snapshot& a, const Snapshot& b);

// Canonical copy: children ordered by their sibling index, child_count
// recomputed.
PropertyTree CaptureProperties(const PropertyTree& tree);
Verdict CompareProperties(const PropertyTree& a, const PropertyTree& b);

struct CombinedVerdict {
  Outcome outcome = Outcome::kPass;
  std::set<Strategy> fired;

  bool failed() const { return outcome == Outcome::kFail; }
  bool operator==(const CombinedVerdict&) const = default;
};

// Fails iff any strategy selected by `mode` fails. Verdicts for strategies
// outside `mode` are ignored.
CombinedVerdict Combine(const std::optional<Verdict>& snapshot,
                        const std::optional<Verdict>& property, OracleMode mode);

// What one oracle observation stores: the parts selected by the mode.
struct Observation {
  std::optional<Snapshot> snapshot;
  std::optional<PropertyTree> properties;

  bool operator==(const Observation&) const = default;
};

struct CheckResult {
  CombinedVerdict combined;
  std::optional<Verdict> snapshot;
  std::optional<Verdict> property;
};

CheckResult Check(const Observation& before, const Observation& after, OracleMode mode);

}  // namespace lossprobe::oracles

#endif  // LOSSPROBE_ORACLES_ORACLES_H_
