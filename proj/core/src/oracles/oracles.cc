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

#include "lossprobe/oracles/oracles.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "lossprobe/common/error.h"

namespace lossprobe::oracles {
namespace {

void CheckCrop(int height, int crop_header, int crop_footer) {
  if (crop_header < 0 || crop_footer < 0 || crop_header + crop_footer >= height) {
    throw Error(ErrorCode::kCropTooLarge,
                "crop " + std::to_string(crop_header) + "+" + std::to_string(crop_footer) +
                    " leaves nothing of a " + std::to_string(height) + "-row image");
  }
}

PropertyNode Canonical(const PropertyNode& node) {
  PropertyNode out = node;
  std::stable_sort(out.children.begin(), out.children.end(),
                   [](const PropertyNode& a, const PropertyNode& b) { return a.index < b.index; });
  for (auto& c : out.children) c = Canonical(c);
  out.child_count = static_cast<int>(out.children.size());
  return out;
}

std::string ChildPath(const std::string& parent, size_t i) {
  return parent.empty() ? std::to_string(i) : parent + "/" + std::to_string(i);
}

// Returns the first differing field, comparing attributes before children.
bool Diverge(const PropertyNode& a, const PropertyNode& b, const std::string& path,
             std::string& where, std::string& field) {
  auto differ = [&](const char* name) {
    where = path;
    field = name;
    return true;
  };
  if (a.content_description != b.content_description) return differ("content_description");
  if (a.resource_id != b.resource_id) return differ("resource_id");
  if (a.text != b.text) return differ("text");
  if (a.visible != b.visible) return differ("visible");
  if (a.checkable != b.checkable) return differ("checkable");
  if (a.checked != b.checked) return differ("checked");
  if (a.selected != b.selected) return differ("selected");
  if (a.size != b.size) return differ("size");
  if (a.child_count != b.child_count || a.children.size() != b.children.size()) {
    return differ("child_count");
  }
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (Diverge(a.children[i], b.children[i], ChildPath(path, i), where, field)) return true;
  }
  return false;
}

}  // namespace

uint8_t Luma(sim::Rgb p) {
  const double y = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
  return static_cast<uint8_t>(std::clamp(std::lround(y), 0L, 255L));
}

Snapshot CaptureSnapshot(const sim::GrayImage& image, int crop_header, int crop_footer) {
  Snapshot s;
  CaptureSnapshot(image, crop_header, crop_footer, s);
  return s;
}

void CaptureSnapshot(const sim::GrayImage& image, int crop_header, int crop_footer, Snapshot& s) {
  CheckCrop(image.height, crop_header, crop_footer);
  s.width = image.width;
  s.height = image.height - crop_header - crop_footer;
  s.crop_header = crop_header;
  s.crop_footer = crop_footer;
  const auto begin = image.pixels.begin() + static_cast<ptrdiff_t>(crop_header) * image.width;
  s.pixels.assign(begin, begin + static_cast<ptrdiff_t>(s.height) * image.width);
}

Snapshot CaptureSnapshot(const sim::RgbImage& image, int crop_header, int crop_footer) {
  CheckCrop(image.height, crop_header, crop_footer);
  Snapshot s;
  s.width = image.width;
  s.height = image.height - crop_header - crop_footer;
  s.crop_header = crop_header;
  s.crop_footer = crop_footer;
  s.pixels.reserve(static_cast<size_t>(s.width) * s.height);
  const size_t first = static_cast<size_t>(crop_header) * image.width;
  for (size_t i = 0; i < static_cast<size_t>(s.width) * s.height; ++i) {
    s.pixels.push_back(Luma(image.pixels[first + i]));
  }
  return s;
}

sim::GrayImage SnapshotImage(const Snapshot& s) {
  sim::GrayImage img;
  img.width = s.width;
  img.height = s.height;
  img.pixels = s.pixels;
  return img;
}

std::string_view OutcomeName(Outcome o) { return o == Outcome::kPass ? "PASS" : "FAIL"; }

std::string_view StrategyName(Strategy s) {
  return s == Strategy::kSnapshot ? "SNAPSHOT" : "PROPERTY";
}

std::string_view OracleModeName(OracleMode m) {
  switch (m) {
    case OracleMode::kSnapshot: return "snapshot";
    case OracleMode::kProperty: return "property";
    case OracleMode::kBoth: return "both";
  }
  return "?";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "SNAPSHOT") return Strategy::kSnapshot;
  if (name == "PROPERTY") return Strategy::kProperty;
  return std::nullopt;
}

std::optional<OracleMode> ParseOracleMode(std::string_view name) {
  if (name == "snapshot") return OracleMode::kSnapshot;
  if (name == "property") return OracleMode::kProperty;
  if (name == "both") return OracleMode::kBoth;
  return std::nullopt;
}

Verdict CompareSnapshots(const Snapshot& a, const Snapshot& b) {
  if (a.width != b.width || a.height != b.height || a.pixels.size() != b.pixels.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
  int64_t d = 0;
  const uint8_t* pa = a.pixels.data();
  const uint8_t* pb = b.pixels.data();
  const size_t n = a.pixels.size();
  // Equal 4 KiB blocks are skipped with memcmp; screens mostly agree.
  constexpr size_t kBlock = 4096;
  for (size_t start = 0; start < n; start += kBlock) {
    const size_t len = std::min(kBlock, n - start);
    if (std::memcmp(pa + start, pb + start, len) == 0) continue;
    for (size_t i = start; i < start + len; ++i) d += pa[i] != pb[i];
  }
  Verdict v;
  v.strategy = Strategy::kSnapshot;
  v.differing = d;
  v.total = static_cast<int64_t>(n);
  v.outcome = d * kThresholdPer > kThresholdPixels * v.total ? Outcome::kFail : Outcome::kPass;
  return v;
}

PropertyTree CaptureProperties(const PropertyTree& tree) {
  return PropertyTree{Canonical(tree.root)};
}

Verdict CompareProperties(const PropertyTree& a, const PropertyTree& b) {
  Verdict v;
  v.strategy = Strategy::kProperty;
  if (Diverge(a.root, b.root, "", v.path, v.field)) v.outcome = Outcome::kFail;
  return v;
}

CombinedVerdict Combine(const std::optional<Verdict>& snapshot,
                        const std::optional<Verdict>& property, OracleMode mode) {
  CombinedVerdict out;
  if (Uses(mode, Strategy::kSnapshot) && snapshot && snapshot->failed()) {
    out.fired.insert(Strategy::kSnapshot);
  }
  if (Uses(mode, Strategy::kProperty) && property && property->failed()) {
    out.fired.insert(Strategy::kProperty);
  }
  out.outcome = out.fired.empty() ? Outcome::kPass : Outcome::kFail;
  return out;
}

CheckResult Check(const Observation& before, const Observation& after, OracleMode mode) {
  CheckResult r;
  if (Uses(mode, Strategy::kSnapshot) && before.snapshot && after.snapshot) {
    r.snapshot = CompareSnapshots(*before.snapshot, *after.snapshot);
  }
  if (Uses(mode, Strategy::kProperty) && before.properties && after.properties) {
    r.property = CompareProperties(*before.properties, *after.properties);
  }
  r.combined = Combine(r.snapshot, r.property, mode);
  return r;
}

}  // namespace lossprobe::oracles
