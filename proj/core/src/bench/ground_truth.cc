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

#include "lossprobe/bench/ground_truth.h"

#include <deque>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "lossprobe/common/error.h"
#include "lossprobe/explorer/explorer.h"
#include "lossprobe/sim/app_instance.h"

namespace lossprobe::bench {
namespace {

using oracles::Strategy;
using sim::AppInstance;

struct CheckOutcome {
  bool crashed = false;
  std::vector<std::string> fired;
  bool snapshot_failed = false;
  bool property_failed = false;
};

oracles::Observation ObserveState(const sim::ConcreteState& st) {
  const sim::ScreenSpec& screen = st.app->screen;
  oracles::Observation o;
  o.snapshot = oracles::CaptureSnapshot(sim::Render(st, 0), screen.HeaderHeight(),
                                        screen.FooterHeight());
  o.properties = oracles::CaptureProperties(sim::DumpHierarchy(st));
  return o;
}

class Search {
 public:
  Search(const sim::AppSpec& app, const GroundTruthOptions& options)
      : spec_(std::make_shared<const sim::AppSpec>(app)), options_(options) {}

  GroundTruth Run();

 private:
  void Visit(const AppInstance& inst);
  void Push(AppInstance inst);
  void Label(const std::vector<std::string>& fired, bool crashed, bool snap, bool prop);

  std::shared_ptr<const sim::AppSpec> spec_;
  GroundTruthOptions options_;
  GroundTruth truth_;
  std::unordered_set<std::string> seen_;
  std::deque<AppInstance> queue_;
  std::unordered_map<std::string, CheckOutcome> checks_;
  std::set<std::string> crashed_faults_;
};

void Search::Push(AppInstance inst) {
  inst.TakeFiredFaults();
  inst.ClearLifecycleLog();
  if (!seen_.insert(inst.Serialize()).second) return;
  if (static_cast<int64_t>(seen_.size()) > options_.max_nodes) {
    throw Error(ErrorCode::kStateSpaceTooLarge,
                spec_->name + ": more than " + std::to_string(options_.max_nodes) +
                    " concrete states");
  }
  queue_.push_back(std::move(inst));
}

void Search::Label(const std::vector<std::string>& fired, bool crashed, bool snap, bool prop) {
  for (const auto& f : fired) {
    auto& s = truth_.strategies[f];
    if (snap) s.insert(Strategy::kSnapshot);
    if (prop) s.insert(Strategy::kProperty);
  }
  if (crashed && !fired.empty()) crashed_faults_.insert(fired.back());
}

void Search::Visit(const AppInstance& inst) {
  ++truth_.nodes;
  const std::string& activity = inst.Foreground().name;
  const std::vector<model::Event> enabled = inst.EnabledEvents();
  truth_.abstract_states.insert(model::Abstract(activity, enabled));
  const int depth = static_cast<int>(inst.BackStack().size()) - 1;
  auto [dist, inserted] = truth_.activity_distance.try_emplace(activity, depth);
  if (!inserted && depth < dist->second) dist->second = depth;

  // Capture, double rotation, compare.
  AppInstance rotated = inst;
  bool crashed = rotated.Rotate().crashed || rotated.Rotate().crashed;
  const std::string key = inst.SerializeForeground();
  auto cached = checks_.find(key);
  if (cached == checks_.end()) {
    ++truth_.checks;
    CheckOutcome out;
    out.crashed = crashed;
    out.fired = rotated.TakeFiredFaults();
    if (!crashed) {
      const oracles::Observation before = ObserveState(inst.State());
      const oracles::Observation after = ObserveState(rotated.State());
      const auto r = oracles::Check(before, after, oracles::OracleMode::kBoth);
      out.snapshot_failed = r.snapshot && r.snapshot->failed();
      out.property_failed = r.property && r.property->failed();
    }
    cached = checks_.emplace(key, std::move(out)).first;
  }
  const CheckOutcome& c = cached->second;
  Label(c.fired, c.crashed, c.snapshot_failed, c.property_failed);
  if (crashed) {
    Push(AppInstance::Load(spec_, 0));
  } else {
    Push(std::move(rotated));
  }

  for (const model::Event& e : enabled) {
    AppInstance next = inst;
    model::Event ev = e;
    if (ev.kind == model::EventKind::kSetText) {
      const sim::ConcreteState st = inst.State();
      const sim::WidgetSpec* w = sim::FindWidget(st.spec->root, ev.locator);
      const std::string def =
          w->text_var.empty() ? w->default_text : st.DefaultOf(w->text_var);
      ev.text = explorer::FillValue(ev.locator, options_.fill_seed, def);
    }
    const sim::StepResult r = next.Apply(ev);
    if (r.crashed) {
      Label(next.TakeFiredFaults(), true, false, false);
      Push(AppInstance::Load(spec_, 0));
    } else {
      Push(std::move(next));
    }
  }
}

GroundTruth Search::Run() {
  for (const auto& a : spec_->activities) {
    for (const auto& f : a.faults) truth_.strategies[f.id];
  }
  Push(AppInstance::Load(spec_, 0));
  while (!queue_.empty()) {
    AppInstance inst = std::move(queue_.front());
    queue_.pop_front();
    Visit(inst);
  }
  for (const auto& [id, s] : truth_.strategies) {
    Detectability d = Detectability::kUndetectable;
    if (crashed_faults_.count(id)) {
      d = Detectability::kCrash;
    } else if (s.size() == 2) {
      d = Detectability::kBoth;
    } else if (s.count(Strategy::kSnapshot)) {
      d = Detectability::kSnapshotOnly;
    } else if (s.count(Strategy::kProperty)) {
      d = Detectability::kPropertyOnly;
    }
    truth_.labels[id] = d;
  }
  return std::move(truth_);
}

}  // namespace

GroundTruth EvaluateGroundTruth(const sim::AppSpec& app, const GroundTruthOptions& options) {
  return Search(app, options).Run();
}

void Annotate(ManifestApp& entry, const GroundTruth& truth) {
  for (auto& f : entry.faults) {
    if (auto it = truth.labels.find(f.fault_id); it != truth.labels.end()) {
      f.detectable_by = it->second;
    }
    if (auto it = truth.activity_distance.find(f.activity); it != truth.activity_distance.end()) {
      f.distance = it->second;
    } else {
      f.distance.reset();
    }
  }
}

}  // namespace lossprobe::bench
