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

#include "lossprobe/sim/driver.h"

#include <algorithm>

#include "lossprobe/common/hash.h"

namespace lossprobe::sim {

// ---------------------------------------------------------------------------
// SimDriver

SimDriver::SimDriver(std::shared_ptr<const AppSpec> spec, uint64_t seed)
    : spec_(std::move(spec)), seed_(seed) {}

void SimDriver::Load() {
  instance_.reset();
  instance_.emplace(AppInstance::Load(spec_, seed_));
}

std::string SimDriver::CurrentActivity() const { return instance_->Foreground().name; }

std::vector<std::string> SimDriver::ActivityNames() const {
  std::vector<std::string> names;
  for (const auto& a : spec_->activities) names.push_back(a.name);
  return names;
}

std::vector<model::Event> SimDriver::EnabledEvents() const {
  return instance_->EnabledEvents();
}

std::vector<FillTarget> SimDriver::FillTargets() const {
  const ConcreteState st = instance_->State();
  std::vector<FillTarget> out;
  for (const auto& e : sim::EnabledEvents(st)) {
    const WidgetSpec* w = FindWidget(st.spec->root, e.locator);
    if (!w) continue;
    if (e.kind == model::EventKind::kSetText) {
      const std::string def =
          w->text_var.empty() ? w->default_text : st.DefaultOf(w->text_var);
      out.push_back({w->locator, false, false, false, def});
    } else if (e.kind == model::EventKind::kTouch && w->kind == WidgetKind::kCheckBox) {
      out.push_back({w->locator, true, st.CheckedOf(*w), w->default_checked, {}});
    }
  }
  return out;
}

StepResult SimDriver::Apply(const model::Event& event) { return instance_->Apply(event); }

StepResult SimDriver::Rotate() { return instance_->Rotate(); }

GrayImage SimDriver::Render() { return sim::Render(instance_->State(), frame_++); }

void SimDriver::RenderInto(GrayImage& out) { sim::Render(instance_->State(), frame_++, out); }

oracles::PropertyTree SimDriver::DumpHierarchy() {
  return sim::DumpHierarchy(instance_->State());
}

std::vector<std::string> SimDriver::TakeFiredFaults() {
  return instance_->TakeFiredFaults();
}

// ---------------------------------------------------------------------------
// NoisyDriver

namespace {

constexpr int kClockWidth = 320;
constexpr int kClockHeight = 48;

void DrawClock(GrayImage& img, int top, const std::string& text) {
  uint64_t state = Fnv1a64(text);
  for (int sx = 0; sx < kClockWidth; sx += 8) {
    state = state * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(sx);
    const auto v = static_cast<uint8_t>(16 + (state >> 40) % 160);
    for (int y = top; y < top + kClockHeight && y < img.height; ++y) {
      for (int x = 16 + sx; x < 16 + sx + 8 && x < img.width; ++x) img.at(x, y) = v;
    }
  }
}

}  // namespace

NoisyDriver::NoisyDriver(std::shared_ptr<const AppSpec> spec, uint64_t seed,
                         NoiseOptions options)
    : inner_(std::move(spec), seed), options_(options) {}

void NoisyDriver::Load() {
  inner_.Load();
  pending_ = 0;
  lag_step_ = 0;
}

StepResult NoisyDriver::Apply(const model::Event& event) {
  pending_ = 0;
  return inner_.Apply(event);
}

StepResult NoisyDriver::Rotate() {
  StepResult r = inner_.Rotate();
  pending_ = options_.recreation_lag;
  lag_step_ = 0;
  return r;
}

ConcreteState NoisyDriver::Recreating(int step) const {
  ConcreteState st = inner_.instance().State();
  st.activity.variables = st.spec->variables;
  st.activity.dialog_stack.clear();
  st.activity.scroll_offset = 0;
  int order = 0;
  ForEachWidget(st.spec->root, [&](const WidgetSpec& w) {
    WidgetState& ws = st.activity.widgets[w.locator];
    ws.text = w.default_text;
    ws.checked = w.default_checked;
    ws.removed = order++ > step + 1;
  });
  return st;
}

void NoisyDriver::Tick() {
  ++reads_;
  if (pending_ > 0) {
    --pending_;
    ++lag_step_;
  }
}

GrayImage NoisyDriver::Render() {
  GrayImage img;
  RenderInto(img);
  return img;
}

void NoisyDriver::RenderInto(GrayImage& img) {
  if (Lagging()) {
    sim::Render(Recreating(lag_step_), frame_++, img);
  } else {
    inner_.RenderInto(img);
  }
  if (options_.clock_period > 0) {
    const uint64_t tick = reads_ / static_cast<uint64_t>(options_.clock_period);
    DrawClock(img, inner_.CropHeader() + 8, "clock " + std::to_string(tick));
  }
}

oracles::PropertyTree NoisyDriver::DumpHierarchy() {
  oracles::PropertyTree tree = Lagging() ? sim::DumpHierarchy(Recreating(lag_step_))
                                         : inner_.DumpHierarchy();
  if (options_.clock_period > 0) {
    const uint64_t tick = reads_ / static_cast<uint64_t>(options_.clock_period);
    oracles::PropertyNode clock;
    clock.text = "clock " + std::to_string(tick);
    clock.size = std::to_string(kClockWidth) + "*" + std::to_string(kClockHeight);
    clock.index = static_cast<int>(tree.root.children.size());
    tree.root.children.push_back(std::move(clock));
    tree.root.child_count = static_cast<int>(tree.root.children.size());
  }
  // One observation is a render followed by a dump; the dump closes it.
  Tick();
  return tree;
}

}  // namespace lossprobe::sim
