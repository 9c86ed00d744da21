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

#ifndef LOSSPROBE_SIM_APP_INSTANCE_H_
#define LOSSPROBE_SIM_APP_INSTANCE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lossprobe/model/event.h"
#include "lossprobe/oracles/property_tree.h"
#include "lossprobe/sim/app_spec.h"
#include "lossprobe/sim/image.h"

namespace lossprobe::sim {

enum class Lifecycle { kCreated, kStarted, kResumed, kPaused, kStopped, kDestroyed };

std::string_view LifecycleName(Lifecycle state);

// True when `to` may directly follow `from` in the activity lifecycle.
bool IsLegalLifecycleTransition(Lifecycle from, Lifecycle to);

enum class Orientation { kPortrait, kLandscape };

struct WidgetState {
  std::string text;
  bool checked = false;
  bool removed = false;

  bool operator==(const WidgetState&) const = default;
};

struct ActivityState {
  std::string name;
  std::map<std::string, std::string> variables;
  std::map<std::string, WidgetState> widgets;  // keyed by locator
  std::vector<std::string> dialog_stack;       // bottom .. top
  int scroll_offset = 0;
  Lifecycle lifecycle = Lifecycle::kCreated;

  bool operator==(const ActivityState&) const = default;
};

// What onSaveInstanceState produces. Keys:
//   "var:<name>"             SAVED activity variables
//   "view:<resource_id>"     text of widgets carrying a resource id
//   "view:<resource_id>:checked"  check state of check boxes with an id
//   "@dialogs", "@scroll"    framework-managed dialog stack and scroll page
using Bundle = std::map<std::string, std::string>;

// The foreground screen of a live instance, as a value.
struct ConcreteState {
  std::shared_ptr<const AppSpec> app;
  const ActivitySpec* spec = nullptr;  // points into *app
  ActivityState activity;
  std::map<std::string, std::string> globals;
  Orientation orientation = Orientation::kPortrait;

  // Variable lookup; activity variables shadow globals.
  const std::string& Var(const std::string& name) const;
  const std::string& DefaultOf(const std::string& name) const;
  bool Holds(const Condition& c) const;

  std::string TextOf(const WidgetSpec& w) const;
  bool CheckedOf(const WidgetSpec& w) const;
  std::optional<std::string> DescriptionOf(const WidgetSpec& w) const;
  bool Removed(const WidgetSpec& w) const;
  bool OnDialogStack(const std::string& locator) const;

  // Own visibility of w, ignoring ancestors: visible flag, guard, page.
  bool SelfShown(const WidgetSpec& w, bool in_dialog) const;
  // Visibility including ancestors and dialog-stack membership.
  bool IsShown(const std::string& locator) const;
};

struct CrashRecord {
  std::string activity;
  std::string fault_id;

  bool operator==(const CrashRecord&) const = default;
};

struct StepResult {
  bool crashed = false;
  CrashRecord crash;

  static StepResult Ok() { return {}; }
  static StepResult Crashed(CrashRecord record) { return {true, std::move(record)}; }
};

// Lifecycle callbacks as they are logged by AppInstance.
inline constexpr std::string_view kOnCreate = "onCreate";
inline constexpr std::string_view kOnStart = "onStart";
inline constexpr std::string_view kOnResume = "onResume";
inline constexpr std::string_view kOnPause = "onPause";
inline constexpr std::string_view kOnStop = "onStop";
inline constexpr std::string_view kOnSave = "onSaveInstanceState";
inline constexpr std::string_view kOnDestroy = "onDestroy";
inline constexpr std::string_view kOnRestart = "onRestart";
inline constexpr std::string_view kOnRestore = "onRestoreInstanceState";

// A running simulated app. Copyable; copies evolve independently.
class AppInstance {
 public:
  // Validates `spec` and launches the initial activity. Throws
  // Error(kSpecInvalid) or Error(kStartCrash).
  static AppInstance Load(AppSpec spec, uint64_t seed);
  static AppInstance Load(std::shared_ptr<const AppSpec> spec, uint64_t seed);

  ConcreteState State() const;
  const ActivityState& Foreground() const { return stack_.back(); }
  const std::vector<ActivityState>& BackStack() const { return stack_; }
  const AppSpec& spec() const { return *app_; }
  std::shared_ptr<const AppSpec> shared_spec() const { return app_; }
  uint64_t seed() const { return seed_; }
  Orientation orientation() const { return orientation_; }
  bool crashed() const { return crashed_.has_value(); }
  const std::optional<CrashRecord>& crash() const { return crashed_; }

  std::vector<model::Event> EnabledEvents() const;

  // Throws Error(kEventNotEnabled) when the event is not enabled or the
  // instance has crashed.
  StepResult Apply(const model::Event& event);

  // Toggles orientation through a full save/destroy/create/restore cycle.
  StepResult Rotate();

  // "<Activity>.<callback>" entries since construction or the last clear.
  const std::vector<std::string>& lifecycle_log() const { return lifecycle_log_; }
  void ClearLifecycleLog() { lifecycle_log_.clear(); }

  // Bundle produced by the most recent stop-start.
  const Bundle& last_bundle() const { return last_bundle_; }

  // Ids of faults that changed observable state (or crashed the app) since
  // the previous call.
  std::vector<std::string> TakeFiredFaults();

  // Remaining stop-starts before each COMPROMISED_STATE fault crashes.
  const std::map<std::string, int>& compromised_counters() const { return counters_; }

  // Canonical text dump of the complete instance state. Equal dumps imply
  // equal future behavior.
  std::string Serialize() const;
  // Same, restricted to what the foreground activity's future rendering
  // and recreation depend on (background activities omitted).
  std::string SerializeForeground() const;

 private:
  AppInstance(std::shared_ptr<const AppSpec> app, uint64_t seed);

  ActivityState Create(const ActivitySpec& spec);
  void SetLifecycle(ActivityState& a, Lifecycle to, std::string_view callback);
  std::optional<CrashRecord> CreateCrash(const ActivitySpec& spec, bool recreate);
  StepResult StopStart(bool rotate);
  StepResult ApplyEffects(const ActivitySpec& spec, const std::vector<const Effect*>& effects);
  void FinishForeground();
  std::string& MutableVar(size_t activity_index, const std::string& name);
  bool Armed(const FaultSpec& f, const ConcreteState& state) const;
  StepResult Crash(const std::string& activity, const std::string& fault_id);

  std::shared_ptr<const AppSpec> app_;
  uint64_t seed_ = 0;
  std::vector<ActivityState> stack_;
  std::map<std::string, std::string> globals_;
  Orientation orientation_ = Orientation::kPortrait;
  std::map<std::string, int> counters_;
  std::optional<CrashRecord> crashed_;
  std::vector<std::string> lifecycle_log_;
  std::vector<std::string> fired_;
  Bundle last_bundle_;
};

std::vector<model::Event> EnabledEvents(const ConcreteState& state);

// Deterministic raster of the state. `frame` only affects the header band.
GrayImage Render(const ConcreteState& state, uint64_t frame);
// Same, reusing the pixel storage of `out`.
void Render(const ConcreteState& state, uint64_t frame, GrayImage& out);

oracles::PropertyTree DumpHierarchy(const ConcreteState& state);

}  // namespace lossprobe::sim

#endif  // LOSSPROBE_SIM_APP_INSTANCE_H_
