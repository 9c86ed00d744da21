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

#include "lossprobe/sim/app_spec.h"

#include <array>
#include <set>
#include <utility>

#include "lossprobe/common/error.h"
#include "lossprobe/common/hash.h"

namespace lossprobe::sim {
namespace {

template <typename E, size_t N>
std::string_view NameOf(const std::array<std::pair<E, std::string_view>, N>& table,
                        E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

template <typename E, size_t N>
std::optional<E> Lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view name) {
  for (const auto& [v, n] : table) {
    if (n == name) return v;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<WidgetKind, std::string_view>, 7> kWidgetKinds = {{
    {WidgetKind::kButton, "button"},
    {WidgetKind::kLabel, "label"},
    {WidgetKind::kEditText, "edit_text"},
    {WidgetKind::kCheckBox, "check_box"},
    {WidgetKind::kDialog, "dialog"},
    {WidgetKind::kList, "list"},
    {WidgetKind::kContainer, "container"},
}};

constexpr std::array<std::pair<EffectOp, std::string_view>, 7> kEffectOps = {{
    {EffectOp::kNavigate, "navigate"},
    {EffectOp::kFinish, "finish"},
    {EffectOp::kSet, "set"},
    {EffectOp::kIncrement, "increment"},
    {EffectOp::kToggle, "toggle"},
    {EffectOp::kShowDialog, "show_dialog"},
    {EffectOp::kDismissDialog, "dismiss_dialog"},
}};

constexpr std::array<std::pair<FaultPattern, std::string_view>, 5> kPatterns = {{
    {FaultPattern::kCrash, "CRASH"},
    {FaultPattern::kDestroyedElement, "DESTROYED_ELEMENT"},
    {FaultPattern::kPhantomElement, "PHANTOM_ELEMENT"},
    {FaultPattern::kModifiedValue, "MODIFIED_VALUE"},
    {FaultPattern::kCompromisedState, "COMPROMISED_STATE"},
}};

constexpr std::array<std::pair<CrashTrigger, std::string_view>, 3> kTriggers = {{
    {CrashTrigger::kRecreate, "recreate"},
    {CrashTrigger::kCreate, "create"},
    {CrashTrigger::kEvent, "event"},
}};

[[noreturn]] void Invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSpecInvalid, where + ": " + what);
}

bool LooksLikePath(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(c == '/' || (c >= '0' && c <= '9'))) return false;
  }
  return true;
}

void AssignLocators(WidgetSpec& w, const std::string& path) {
  w.locator = w.resource_id.empty() ? path : w.resource_id;
  for (size_t i = 0; i < w.children.size(); ++i) {
    AssignLocators(w.children[i], path + "/" + std::to_string(i));
  }
}

class Validator {
 public:
  explicit Validator(const AppSpec& app) : app_(app) {}

  void Run() {
    if (app_.format_version != kAppSpecFormatVersion) {
      Invalid("app", "unsupported format_version " +
                         std::to_string(app_.format_version));
    }
    if (app_.name.empty()) Invalid("app", "name is empty");
    const ScreenSpec& s = app_.screen;
    if (s.width <= 0 || s.height <= 0 || s.PageHeight() <= 0) {
      Invalid("app", "screen dimensions must be positive");
    }
    if (app_.activities.empty()) Invalid("app", "no activities");
    std::set<std::string> names;
    for (const auto& a : app_.activities) {
      if (a.name.empty()) Invalid("app", "activity with empty name");
      if (!names.insert(a.name).second) {
        Invalid("app", "duplicate activity " + a.name);
      }
    }
    if (!app_.FindActivity(app_.initial_activity)) {
      Invalid("app", "initial_activity '" + app_.initial_activity +
                         "' does not exist");
    }
    std::set<std::string> fault_ids;
    for (const auto& a : app_.activities) {
      CheckActivity(a);
      for (const auto& f : a.faults) {
        if (f.id.empty()) Invalid(a.name, "fault with empty id");
        if (!fault_ids.insert(f.id).second) {
          Invalid(a.name, "duplicate fault id " + f.id);
        }
      }
    }
  }

 private:
  bool HasVar(const ActivitySpec& a, const std::string& var) const {
    return a.variables.count(var) > 0 || app_.globals.count(var) > 0;
  }

  void CheckCondition(const ActivitySpec& a, const Condition& c,
                      const std::string& where) const {
    if (!HasVar(a, c.variable)) {
      Invalid(a.name, where + " references unknown variable " + c.variable);
    }
  }

  void CheckWidget(const ActivitySpec& a, const WidgetSpec& w, bool is_root,
                   std::set<std::string>& locators) {
    const std::string where = "widget " + w.locator;
    if (!locators.insert(w.locator).second) {
      Invalid(a.name, "duplicate locator " + w.locator);
    }
    if (!w.resource_id.empty() && LooksLikePath(w.resource_id)) {
      Invalid(a.name, where + " resource_id must not look like a path");
    }
    if (w.editable && w.kind != WidgetKind::kEditText) {
      Invalid(a.name, where + " is editable but not an edit_text");
    }
    if (!w.children.empty() && w.kind != WidgetKind::kContainer &&
        w.kind != WidgetKind::kList && w.kind != WidgetKind::kDialog) {
      Invalid(a.name, where + " has children but is not a container");
    }
    if (w.visible && (w.width <= 0 || w.height <= 0)) {
      Invalid(a.name, where + " is visible with an empty size");
    }
    if (w.kind == WidgetKind::kDialog && is_root) {
      Invalid(a.name, "the root widget cannot be a dialog");
    }
    for (const std::string* var : {&w.text_var, &w.description_var, &w.render_var}) {
      if (!var->empty() && !HasVar(a, *var)) {
        Invalid(a.name, where + " binds unknown variable " + *var);
      }
    }
    if (w.visible_when) CheckCondition(a, *w.visible_when, where);
    for (const auto& child : w.children) {
      if (child.kind == WidgetKind::kDialog && !is_root) {
        Invalid(a.name, "dialog " + child.locator +
                            " must be a direct child of the root");
      }
      CheckWidget(a, child, false, locators);
    }
  }

  void CheckActivity(const ActivitySpec& a) {
    std::set<std::string> locators;
    CheckWidget(a, a.root, true, locators);
    if (a.scroll_extent < 0) Invalid(a.name, "negative scroll_extent");
    for (const auto& [var, _] : a.save_policy) {
      if (!a.variables.count(var)) {
        Invalid(a.name, "save_policy names unknown variable " + var);
      }
    }
    for (const auto& [var, _] : a.restore_policy) {
      if (!a.variables.count(var)) {
        Invalid(a.name, "restore_policy names unknown variable " + var);
      }
    }
    for (const auto& t : a.transitions) {
      using model::EventKind;
      if (t.kind == EventKind::kKey || t.kind == EventKind::kRotate ||
          t.kind == EventKind::kDlrProbabilistic) {
        Invalid(a.name, "transitions cannot be bound to " +
                            std::string(model::EventKindName(t.kind)));
      }
      if (!(t.kind == EventKind::kScroll && t.locator.empty()) &&
          !FindWidget(a.root, t.locator)) {
        Invalid(a.name, "transition on unknown widget " + t.locator);
      }
      if (t.when) CheckCondition(a, *t.when, "transition guard");
      for (const auto& e : t.effects) CheckEffect(a, e);
    }
    for (const auto& f : a.faults) CheckFault(a, f);
  }

  void CheckEffect(const ActivitySpec& a, const Effect& e) {
    switch (e.op) {
      case EffectOp::kNavigate:
        if (!app_.FindActivity(e.target)) {
          Invalid(a.name, "navigate to unknown activity " + e.target);
        }
        break;
      case EffectOp::kSet:
      case EffectOp::kIncrement:
      case EffectOp::kToggle:
        if (!HasVar(a, e.target)) {
          Invalid(a.name, "effect on unknown variable " + e.target);
        }
        break;
      case EffectOp::kShowDialog: {
        const WidgetSpec* w = FindWidget(a.root, e.target);
        if (!w || w->kind != WidgetKind::kDialog) {
          Invalid(a.name, "show_dialog target " + e.target + " is not a dialog");
        }
        break;
      }
      case EffectOp::kFinish:
      case EffectOp::kDismissDialog:
        break;
    }
  }

  void CheckFault(const ActivitySpec& a, const FaultSpec& f) {
    const std::string where = "fault " + f.id;
    const bool on_variable = f.pattern == FaultPattern::kCrash ||
                             f.pattern == FaultPattern::kCompromisedState;
    if (on_variable) {
      if (!HasVar(a, f.target)) {
        Invalid(a.name, where + " targets unknown variable " + f.target);
      }
    } else {
      const WidgetSpec* w = FindWidget(a.root, f.target);
      if (!w) Invalid(a.name, where + " targets unknown widget " + f.target);
      if (f.pattern == FaultPattern::kPhantomElement &&
          w->kind != WidgetKind::kDialog) {
        Invalid(a.name, where + " must target a dialog");
      }
      if (w == &a.root) Invalid(a.name, where + " cannot target the root widget");
    }
    if (f.latency < 1) Invalid(a.name, where + " latency must be >= 1");
    if (f.arming_condition) CheckCondition(a, *f.arming_condition, where);
    if (f.pattern == FaultPattern::kCrash && f.trigger == CrashTrigger::kEvent &&
        !FindWidget(a.root, f.trigger_locator)) {
      Invalid(a.name, where + " trigger widget " + f.trigger_locator + " not found");
    }
  }

  const AppSpec& app_;
};

}  // namespace

std::string_view WidgetKindName(WidgetKind kind) { return NameOf(kWidgetKinds, kind); }
std::optional<WidgetKind> ParseWidgetKind(std::string_view name) {
  return Lookup(kWidgetKinds, name);
}
std::string_view EffectOpName(EffectOp op) { return NameOf(kEffectOps, op); }
std::optional<EffectOp> ParseEffectOp(std::string_view name) {
  return Lookup(kEffectOps, name);
}
std::string_view FaultPatternName(FaultPattern p) { return NameOf(kPatterns, p); }
std::optional<FaultPattern> ParseFaultPattern(std::string_view name) {
  return Lookup(kPatterns, name);
}
std::string_view CrashTriggerName(CrashTrigger t) { return NameOf(kTriggers, t); }
std::optional<CrashTrigger> ParseCrashTrigger(std::string_view name) {
  return Lookup(kTriggers, name);
}

SavePolicy ActivitySpec::SavePolicyFor(const std::string& var) const {
  auto it = save_policy.find(var);
  return it == save_policy.end() ? SavePolicy::kSaved : it->second;
}

RestorePolicy ActivitySpec::RestorePolicyFor(const std::string& var) const {
  auto it = restore_policy.find(var);
  return it == restore_policy.end() ? RestorePolicy::kRestored : it->second;
}

const ActivitySpec* AppSpec::FindActivity(std::string_view activity) const {
  for (const auto& a : activities) {
    if (a.name == activity) return &a;
  }
  return nullptr;
}

const FaultSpec* AppSpec::FindFault(std::string_view id) const {
  for (const auto& a : activities) {
    for (const auto& f : a.faults) {
      if (f.id == id) return &f;
    }
  }
  return nullptr;
}

const WidgetSpec* FindWidget(const WidgetSpec& root, std::string_view locator) {
  if (root.locator == locator) return &root;
  for (const auto& child : root.children) {
    if (const WidgetSpec* w = FindWidget(child, locator)) return w;
  }
  return nullptr;
}

void FinalizeAppSpec(AppSpec& spec) {
  for (auto& a : spec.activities) AssignLocators(a.root, "0");
  Validator(spec).Run();
}

std::string WrongValueSentinel(std::string_view variable) {
  static constexpr char kHex[] = "0123456789abcdef";
  uint64_t h = Fnv1a64(variable);
  std::string out = "?";
  for (int i = 0; i < 6; ++i) {
    out += kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace lossprobe::sim
