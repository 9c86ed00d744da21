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

#include "lossprobe/sim/app_instance.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "lossprobe/common/error.h"

namespace lossprobe::sim {
namespace {

const std::string kEmpty;

bool IsContainerKind(WidgetKind k) {
  return k == WidgetKind::kContainer || k == WidgetKind::kList ||
         k == WidgetKind::kDialog;
}

void AppendField(std::string& out, std::string_view s) {
  out += std::to_string(s.size());
  out += ':';
  out += s;
}

std::vector<std::string> SplitLines(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start < s.size()) {
    size_t end = s.find('\n', start);
    if (end == std::string::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

Bundle SaveInstanceState(const ConcreteState& st) {
  const ActivitySpec& spec = *st.spec;
  Bundle bundle;
  for (const auto& [name, _] : spec.variables) {
    if (spec.SavePolicyFor(name) == SavePolicy::kSaved) {
      bundle["var:" + name] = st.activity.variables.at(name);
    }
  }
  ForEachWidget(spec.root, [&](const WidgetSpec& w) {
    if (w.resource_id.empty()) return;
    const WidgetState& ws = st.activity.widgets.at(w.locator);
    bundle["view:" + w.resource_id] = ws.text;
    if (w.kind == WidgetKind::kCheckBox) {
      bundle["view:" + w.resource_id + ":checked"] = ws.checked ? "true" : "false";
    }
  });
  std::string dialogs;
  for (const auto& d : st.activity.dialog_stack) {
    if (!dialogs.empty()) dialogs += '\n';
    dialogs += d;
  }
  bundle["@dialogs"] = dialogs;
  bundle["@scroll"] = std::to_string(st.activity.scroll_offset);
  return bundle;
}

void RestoreInstanceState(const ActivitySpec& spec, const Bundle& bundle,
                          ActivityState& fresh) {
  for (const auto& [name, def] : spec.variables) {
    auto it = bundle.find("var:" + name);
    if (it == bundle.end()) continue;
    switch (spec.RestorePolicyFor(name)) {
      case RestorePolicy::kRestored:
        fresh.variables[name] = it->second;
        break;
      case RestorePolicy::kDefaulted:
        fresh.variables[name] = def;
        break;
      case RestorePolicy::kWrongValue:
        fresh.variables[name] = WrongValueSentinel(name);
        break;
    }
  }
  ForEachWidget(spec.root, [&](const WidgetSpec& w) {
    if (w.resource_id.empty()) return;
    WidgetState& ws = fresh.widgets[w.locator];
    if (auto it = bundle.find("view:" + w.resource_id); it != bundle.end()) {
      ws.text = it->second;
    }
    if (auto it = bundle.find("view:" + w.resource_id + ":checked"); it != bundle.end()) {
      ws.checked = it->second == "true";
    }
  });
  if (auto it = bundle.find("@dialogs"); it != bundle.end()) {
    for (auto& d : SplitLines(it->second)) {
      const WidgetSpec* w = FindWidget(spec.root, d);
      if (w && w->kind == WidgetKind::kDialog) fresh.dialog_stack.push_back(d);
    }
  }
  if (auto it = bundle.find("@scroll"); it != bundle.end()) {
    int offset = 0;
    try {
      offset = std::stoi(it->second);
    } catch (const std::exception&) {
      offset = 0;
    }
    fresh.scroll_offset = std::clamp(offset, 0, spec.scroll_extent);
  }
}

}  // namespace

std::string_view LifecycleName(Lifecycle state) {
  switch (state) {
    case Lifecycle::kCreated: return "CREATED";
    case Lifecycle::kStarted: return "STARTED";
    case Lifecycle::kResumed: return "RESUMED";
    case Lifecycle::kPaused: return "PAUSED";
    case Lifecycle::kStopped: return "STOPPED";
    case Lifecycle::kDestroyed: return "DESTROYED";
  }
  return "?";
}

bool IsLegalLifecycleTransition(Lifecycle from, Lifecycle to) {
  using L = Lifecycle;
  switch (from) {
    case L::kCreated: return to == L::kStarted;
    case L::kStarted: return to == L::kResumed;
    case L::kResumed: return to == L::kPaused;
    case L::kPaused: return to == L::kStopped;
    case L::kStopped: return to == L::kDestroyed || to == L::kStarted;
    case L::kDestroyed: return to == L::kCreated;
  }
  return false;
}

// ---------------------------------------------------------------------------
// ConcreteState

const std::string& ConcreteState::Var(const std::string& name) const {
  if (auto it = activity.variables.find(name); it != activity.variables.end()) {
    return it->second;
  }
  if (auto it = globals.find(name); it != globals.end()) return it->second;
  return kEmpty;
}

const std::string& ConcreteState::DefaultOf(const std::string& name) const {
  if (auto it = spec->variables.find(name); it != spec->variables.end()) {
    return it->second;
  }
  if (auto it = app->globals.find(name); it != app->globals.end()) return it->second;
  return kEmpty;
}

bool ConcreteState::Holds(const Condition& c) const {
  const std::string& v = Var(c.variable);
  switch (c.op) {
    case Condition::Op::kEquals: return v == c.value;
    case Condition::Op::kNotEquals: return v != c.value;
    case Condition::Op::kChanged: return v != DefaultOf(c.variable);
    case Condition::Op::kUnchanged: return v == DefaultOf(c.variable);
  }
  return false;
}

std::string ConcreteState::TextOf(const WidgetSpec& w) const {
  if (!w.text_var.empty()) return Var(w.text_var);
  auto it = activity.widgets.find(w.locator);
  return it == activity.widgets.end() ? w.default_text : it->second.text;
}

bool ConcreteState::CheckedOf(const WidgetSpec& w) const {
  auto it = activity.widgets.find(w.locator);
  return it == activity.widgets.end() ? w.default_checked : it->second.checked;
}

std::optional<std::string> ConcreteState::DescriptionOf(const WidgetSpec& w) const {
  if (!w.description_var.empty()) return Var(w.description_var);
  return w.content_description;
}

bool ConcreteState::Removed(const WidgetSpec& w) const {
  auto it = activity.widgets.find(w.locator);
  return it != activity.widgets.end() && it->second.removed;
}

bool ConcreteState::OnDialogStack(const std::string& locator) const {
  return std::find(activity.dialog_stack.begin(), activity.dialog_stack.end(),
                   locator) != activity.dialog_stack.end();
}

bool ConcreteState::SelfShown(const WidgetSpec& w, bool in_dialog) const {
  if (!w.visible) return false;
  if (w.visible_when && !Holds(*w.visible_when)) return false;
  if (in_dialog || w.locator == spec->root.locator) return true;
  const int page_h = app->screen.PageHeight();
  return w.y >= 0 && w.y / page_h == activity.scroll_offset;
}

bool ConcreteState::IsShown(const std::string& locator) const {
  std::optional<bool> result;
  auto visit = [&](auto& self, const WidgetSpec& w, bool parent_shown,
                   bool in_dialog) -> void {
    if (result) return;
    bool shown;
    if (w.kind == WidgetKind::kDialog) {
      in_dialog = true;
      shown = OnDialogStack(w.locator) && !Removed(w) && SelfShown(w, true);
    } else {
      shown = parent_shown && !Removed(w) && SelfShown(w, in_dialog);
    }
    if (w.locator == locator) {
      result = shown;
      return;
    }
    for (const auto& c : w.children) self(self, c, shown, in_dialog);
  };
  visit(visit, spec->root, true, false);
  return result.value_or(false);
}

// ---------------------------------------------------------------------------
// AppInstance

AppInstance::AppInstance(std::shared_ptr<const AppSpec> app, uint64_t seed)
    : app_(std::move(app)), seed_(seed), globals_(app_->globals) {}

AppInstance AppInstance::Load(AppSpec spec, uint64_t seed) {
  FinalizeAppSpec(spec);
  return Load(std::make_shared<const AppSpec>(std::move(spec)), seed);
}

AppInstance AppInstance::Load(std::shared_ptr<const AppSpec> spec, uint64_t seed) {
  AppInstance inst(std::move(spec), seed);
  for (const auto& a : inst.app_->activities) {
    for (const auto& f : a.faults) {
      if (f.pattern == FaultPattern::kCompromisedState) inst.counters_[f.id] = f.latency;
    }
  }
  const ActivitySpec& initial = *inst.app_->FindActivity(inst.app_->initial_activity);
  inst.stack_.push_back(inst.Create(initial));
  if (auto crash = inst.CreateCrash(initial, /*recreate=*/false)) {
    throw Error(ErrorCode::kStartCrash,
                initial.name + " crashed at launch (fault " + crash->fault_id + ")");
  }
  inst.SetLifecycle(inst.stack_.back(), Lifecycle::kStarted, kOnStart);
  inst.SetLifecycle(inst.stack_.back(), Lifecycle::kResumed, kOnResume);
  return inst;
}

ConcreteState AppInstance::State() const {
  ConcreteState st;
  st.app = app_;
  st.spec = app_->FindActivity(stack_.back().name);
  st.activity = stack_.back();
  st.globals = globals_;
  st.orientation = orientation_;
  return st;
}

std::vector<model::Event> AppInstance::EnabledEvents() const {
  return sim::EnabledEvents(State());
}

ActivityState AppInstance::Create(const ActivitySpec& spec) {
  ActivityState a;
  a.name = spec.name;
  a.variables = spec.variables;
  ForEachWidget(spec.root, [&](const WidgetSpec& w) {
    a.widgets[w.locator] = WidgetState{w.default_text, w.default_checked, false};
  });
  a.lifecycle = Lifecycle::kCreated;
  lifecycle_log_.push_back(spec.name + "." + std::string(kOnCreate));
  return a;
}

void AppInstance::SetLifecycle(ActivityState& a, Lifecycle to, std::string_view callback) {
  if (!IsLegalLifecycleTransition(a.lifecycle, to)) {
    throw std::logic_error("illegal lifecycle transition " +
                           std::string(LifecycleName(a.lifecycle)) + " -> " +
                           std::string(LifecycleName(to)));
  }
  a.lifecycle = to;
  lifecycle_log_.push_back(a.name + "." + std::string(callback));
}

bool AppInstance::Armed(const FaultSpec& f, const ConcreteState& state) const {
  return !f.arming_condition || state.Holds(*f.arming_condition);
}

std::optional<CrashRecord> AppInstance::CreateCrash(const ActivitySpec& spec,
                                                    bool recreate) {
  const ConcreteState st = State();
  for (const auto& f : spec.faults) {
    if (f.pattern != FaultPattern::kCrash) continue;
    const bool fires = f.trigger == CrashTrigger::kCreate ||
                       (recreate && f.trigger == CrashTrigger::kRecreate);
    if (fires && Armed(f, st)) return CrashRecord{spec.name, f.id};
  }
  return std::nullopt;
}

StepResult AppInstance::Crash(const std::string& activity, const std::string& fault_id) {
  crashed_ = CrashRecord{activity, fault_id};
  fired_.push_back(fault_id);
  lifecycle_log_.push_back(activity + ".crash");
  return StepResult::Crashed(*crashed_);
}

std::vector<std::string> AppInstance::TakeFiredFaults() {
  std::vector<std::string> out;
  out.swap(fired_);
  return out;
}

std::string& AppInstance::MutableVar(size_t activity_index, const std::string& name) {
  auto& vars = stack_[activity_index].variables;
  if (auto it = vars.find(name); it != vars.end()) return it->second;
  return globals_[name];
}

void AppInstance::FinishForeground() {
  ActivityState& fg = stack_.back();
  SetLifecycle(fg, Lifecycle::kPaused, kOnPause);
  SetLifecycle(fg, Lifecycle::kStopped, kOnStop);
  SetLifecycle(fg, Lifecycle::kDestroyed, kOnDestroy);
  stack_.pop_back();
  ActivityState& back = stack_.back();
  lifecycle_log_.push_back(back.name + "." + std::string(kOnRestart));
  SetLifecycle(back, Lifecycle::kStarted, kOnStart);
  SetLifecycle(back, Lifecycle::kResumed, kOnResume);
}

StepResult AppInstance::Apply(const model::Event& event) {
  using model::EventKind;
  if (crashed_) throw Error(ErrorCode::kEventNotEnabled, "instance has crashed");
  const ConcreteState st = State();
  const model::EventId id = event.Id();
  const auto enabled = sim::EnabledEvents(st);
  if (std::none_of(enabled.begin(), enabled.end(),
                   [&](const model::Event& e) { return e.Id() == id; })) {
    throw Error(ErrorCode::kEventNotEnabled, id.ToString() + " in " + st.activity.name);
  }
  const ActivitySpec& spec = *st.spec;
  const size_t idx = stack_.size() - 1;
  ActivityState& fg = stack_.back();

  switch (event.kind) {
    case EventKind::kKey:
      if (event.key == model::kKeyHome) return StopStart(/*rotate=*/false);
      if (!fg.dialog_stack.empty()) {
        fg.dialog_stack.pop_back();
      } else if (stack_.size() > 1) {
        FinishForeground();
      }
      return StepResult::Ok();
    case EventKind::kTouch: {
      const WidgetSpec* w = FindWidget(spec.root, event.locator);
      if (w && w->kind == WidgetKind::kCheckBox) {
        fg.widgets[w->locator].checked = !fg.widgets[w->locator].checked;
      }
      for (const auto& f : spec.faults) {
        if (f.pattern == FaultPattern::kCrash && f.trigger == CrashTrigger::kEvent &&
            f.trigger_locator == event.locator && Armed(f, st)) {
          return Crash(spec.name, f.id);
        }
      }
      break;
    }
    case EventKind::kSetText: {
      const WidgetSpec* w = FindWidget(spec.root, event.locator);
      if (w && !w->text_var.empty()) {
        MutableVar(idx, w->text_var) = event.text;
      } else {
        fg.widgets[event.locator].text = event.text;
      }
      break;
    }
    case EventKind::kScroll:
      if (spec.scroll_extent > 0) {
        fg.scroll_offset = (fg.scroll_offset + 1) % (spec.scroll_extent + 1);
      }
      break;
    case EventKind::kLongTouch:
    case EventKind::kRotate:
    case EventKind::kDlrProbabilistic:
      break;
  }

  const ConcreteState after = State();
  std::vector<const Effect*> effects;
  for (const auto& t : spec.transitions) {
    if (t.kind != event.kind || t.locator != event.locator) continue;
    if (t.when && !after.Holds(*t.when)) continue;
    for (const auto& e : t.effects) effects.push_back(&e);
  }
  return ApplyEffects(spec, effects);
}

StepResult AppInstance::ApplyEffects(const ActivitySpec& spec,
                                     const std::vector<const Effect*>& effects) {
  const size_t idx = stack_.size() - 1;
  for (const Effect* e : effects) {
    switch (e->op) {
      case EffectOp::kNavigate: {
        const ActivitySpec& target = *app_->FindActivity(e->target);
        if (idx == stack_.size() - 1) {
          SetLifecycle(stack_.back(), Lifecycle::kPaused, kOnPause);
          SetLifecycle(stack_.back(), Lifecycle::kStopped, kOnStop);
        }
        stack_.push_back(Create(target));
        if (auto crash = CreateCrash(target, /*recreate=*/false)) {
          return Crash(crash->activity, crash->fault_id);
        }
        SetLifecycle(stack_.back(), Lifecycle::kStarted, kOnStart);
        SetLifecycle(stack_.back(), Lifecycle::kResumed, kOnResume);
        break;
      }
      case EffectOp::kFinish:
        if (stack_.size() > 1 && idx == stack_.size() - 1) FinishForeground();
        break;
      case EffectOp::kSet:
        MutableVar(idx, e->target) = e->value;
        break;
      case EffectOp::kIncrement: {
        std::string& v = MutableVar(idx, e->target);
        long long n = 0;
        try {
          n = std::stoll(v);
        } catch (const std::exception&) {
          n = 0;
        }
        v = std::to_string(n + 1);
        break;
      }
      case EffectOp::kToggle: {
        std::string& v = MutableVar(idx, e->target);
        v = v == "true" ? "false" : "true";
        break;
      }
      case EffectOp::kShowDialog: {
        auto& dialogs = stack_[idx].dialog_stack;
        if (std::find(dialogs.begin(), dialogs.end(), e->target) == dialogs.end()) {
          dialogs.push_back(e->target);
        }
        break;
      }
      case EffectOp::kDismissDialog:
        if (!stack_[idx].dialog_stack.empty()) stack_[idx].dialog_stack.pop_back();
        break;
    }
  }
  (void)spec;
  return StepResult::Ok();
}

StepResult AppInstance::Rotate() {
  if (crashed_) throw Error(ErrorCode::kEventNotEnabled, "instance has crashed");
  return StopStart(/*rotate=*/true);
}

StepResult AppInstance::StopStart(bool rotate) {
  const ConcreteState pre = State();
  const ActivitySpec& spec = *pre.spec;
  ActivityState& fg = stack_.back();
  SetLifecycle(fg, Lifecycle::kPaused, kOnPause);
  SetLifecycle(fg, Lifecycle::kStopped, kOnStop);
  Bundle bundle = SaveInstanceState(pre);
  lifecycle_log_.push_back(spec.name + "." + std::string(kOnSave));
  std::vector<const FaultSpec*> armed;
  for (const auto& f : spec.faults) {
    if (Armed(f, pre)) armed.push_back(&f);
  }
  SetLifecycle(fg, Lifecycle::kDestroyed, kOnDestroy);
  if (rotate) {
    orientation_ = orientation_ == Orientation::kPortrait ? Orientation::kLandscape
                                                          : Orientation::kPortrait;
  }

  ActivityState fresh = Create(spec);
  SetLifecycle(fresh, Lifecycle::kStarted, kOnStart);
  RestoreInstanceState(spec, bundle, fresh);
  lifecycle_log_.push_back(spec.name + "." + std::string(kOnRestore));
  stack_.back() = std::move(fresh);
  last_bundle_ = std::move(bundle);

  for (const FaultSpec* f : armed) {
    ActivityState& cur = stack_.back();
    switch (f->pattern) {
      case FaultPattern::kCrash:
        if (f->trigger != CrashTrigger::kEvent) return Crash(spec.name, f->id);
        break;
      case FaultPattern::kCompromisedState: {
        int& left = counters_[f->id];
        if (--left <= 0) return Crash(spec.name, f->id);
        break;
      }
      case FaultPattern::kDestroyedElement: {
        const WidgetSpec* w = FindWidget(spec.root, f->target);
        auto& dialogs = cur.dialog_stack;
        if (w->kind == WidgetKind::kDialog) {
          auto it = std::find(dialogs.begin(), dialogs.end(), f->target);
          if (it != dialogs.end()) {
            dialogs.erase(it);
            fired_.push_back(f->id);
          }
        } else {
          const bool was_shown = State().IsShown(f->target);
          cur.widgets[f->target].removed = true;
          if (was_shown) fired_.push_back(f->id);
        }
        break;
      }
      case FaultPattern::kPhantomElement: {
        auto& dialogs = cur.dialog_stack;
        if (std::find(dialogs.begin(), dialogs.end(), f->target) == dialogs.end()) {
          dialogs.push_back(f->target);
          fired_.push_back(f->id);
        }
        break;
      }
      case FaultPattern::kModifiedValue: {
        const WidgetSpec* w = FindWidget(spec.root, f->target);
        bool changed = false;
        for (const std::string* var : {&w->text_var, &w->description_var, &w->render_var}) {
          if (var->empty()) continue;
          std::string& v = MutableVar(stack_.size() - 1, *var);
          const std::string& def = pre.DefaultOf(*var);
          if (v != def) {
            v = def;
            changed = true;
          }
        }
        WidgetState& ws = cur.widgets[f->target];
        if (ws.text != w->default_text) {
          ws.text = w->default_text;
          changed = changed || w->text_var.empty();
        }
        if (ws.checked != w->default_checked) {
          ws.checked = w->default_checked;
          changed = true;
        }
        if (changed) fired_.push_back(f->id);
        break;
      }
    }
  }
  SetLifecycle(stack_.back(), Lifecycle::kResumed, kOnResume);
  return StepResult::Ok();
}

namespace {

void SerializeActivity(const ActivityState& a, std::string& out) {
  out += "\nA";
  AppendField(out, a.name);
  out += std::string(LifecycleName(a.lifecycle)) + "|" + std::to_string(a.scroll_offset) + "|";
  for (const auto& d : a.dialog_stack) AppendField(out, d);
  out += "\n v";
  for (const auto& [k, v] : a.variables) {
    AppendField(out, k);
    AppendField(out, v);
  }
  out += "\n w";
  for (const auto& [loc, ws] : a.widgets) {
    AppendField(out, loc);
    AppendField(out, ws.text);
    out += ws.checked ? "1" : "0";
    out += ws.removed ? "x" : "-";
  }
}

}  // namespace

std::string AppInstance::SerializeForeground() const {
  std::string out;
  out += orientation_ == Orientation::kPortrait ? "P" : "L";
  out += crashed_ ? "!" : ".";
  out += "\ng";
  for (const auto& [k, v] : globals_) {
    AppendField(out, k);
    AppendField(out, v);
  }
  out += "\nc";
  for (const auto& [k, v] : counters_) {
    AppendField(out, k);
    out += std::to_string(v) + ";";
  }
  SerializeActivity(stack_.back(), out);
  out += "\n";
  return out;
}

std::string AppInstance::Serialize() const {
  std::string out = SerializeForeground();
  out += "stack " + std::to_string(stack_.size());
  for (size_t i = 0; i + 1 < stack_.size(); ++i) SerializeActivity(stack_[i], out);
  out += "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Enabled events

std::vector<model::Event> EnabledEvents(const ConcreteState& st) {
  std::set<model::EventId> ids;
  auto visit = [&](auto& self, const WidgetSpec& w, bool in_dialog) -> void {
    if (st.Removed(w) || !st.SelfShown(w, in_dialog)) return;
    if (w.clickable) ids.insert({model::EventKind::kTouch, w.locator, {}});
    if (w.long_clickable) ids.insert({model::EventKind::kLongTouch, w.locator, {}});
    if (w.editable) ids.insert({model::EventKind::kSetText, w.locator, {}});
    if (w.kind == WidgetKind::kList || w.scrollable) {
      ids.insert({model::EventKind::kScroll, w.locator, {}});
    }
    for (const auto& c : w.children) {
      if (c.kind != WidgetKind::kDialog) self(self, c, in_dialog);
    }
  };
  const ActivitySpec& spec = *st.spec;
  if (!st.activity.dialog_stack.empty()) {
    if (const WidgetSpec* top = FindWidget(spec.root, st.activity.dialog_stack.back())) {
      visit(visit, *top, true);
    }
  } else {
    visit(visit, spec.root, false);
    if (spec.scroll_extent > 0) ids.insert({model::EventKind::kScroll, {}, {}});
  }
  ids.insert({model::EventKind::kKey, {}, std::string(model::kKeyBack)});
  ids.insert({model::EventKind::kKey, {}, std::string(model::kKeyHome)});
  std::vector<model::Event> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(model::Event::FromId(id));
  return out;
}

// ---------------------------------------------------------------------------
// Hierarchy dump

namespace {

oracles::PropertyNode DumpNode(const ConcreteState& st, const WidgetSpec& w,
                               bool parent_shown, bool in_dialog, int index) {
  oracles::PropertyNode n;
  const bool shown = parent_shown && st.SelfShown(w, in_dialog);
  n.content_description = st.DescriptionOf(w);
  if (!w.resource_id.empty()) n.resource_id = w.resource_id;
  if (!(IsContainerKind(w.kind) && w.default_text.empty() && w.text_var.empty())) {
    n.text = st.TextOf(w);
  }
  n.visible = shown;
  n.checkable = w.kind == WidgetKind::kCheckBox;
  n.checked = st.CheckedOf(w);
  n.selected = false;
  n.size = std::to_string(w.width) + "*" + std::to_string(w.height);
  n.index = index;
  int i = 0;
  for (const auto& c : w.children) {
    if (c.kind == WidgetKind::kDialog || st.Removed(c)) continue;
    n.children.push_back(DumpNode(st, c, shown, in_dialog, i++));
  }
  n.child_count = static_cast<int>(n.children.size());
  return n;
}

}  // namespace

oracles::PropertyTree DumpHierarchy(const ConcreteState& st) {
  const ActivitySpec& spec = *st.spec;
  oracles::PropertyTree tree{DumpNode(st, spec.root, true, false, 0)};
  int index = tree.root.child_count;
  for (const auto& d : st.activity.dialog_stack) {
    const WidgetSpec* w = FindWidget(spec.root, d);
    if (!w || st.Removed(*w)) continue;
    tree.root.children.push_back(DumpNode(st, *w, true, true, index++));
  }
  tree.root.child_count = static_cast<int>(tree.root.children.size());
  return tree;
}

}  // namespace lossprobe::sim
