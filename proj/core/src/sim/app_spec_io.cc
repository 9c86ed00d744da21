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

#include "lossprobe/sim/app_spec_io.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "lossprobe/common/error.h"

namespace lossprobe::sim {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSpecInvalid, where + ": " + what);
}

void RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) Bad(where, "expected an object");
}

void AllowKeys(const json& j, const std::string& where,
               std::initializer_list<std::string_view> keys) {
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (auto key : keys) known = known || key == k;
    if (!known) Bad(where, "unknown key '" + k + "'");
  }
}

std::string GetString(const json& j, const char* key, const std::string& where,
                      const std::string& fallback = {}) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) Bad(where, std::string(key) + " must be a string");
  return it->get<std::string>();
}

std::string RequireString(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) Bad(where, std::string("missing ") + key);
  return GetString(j, key, where);
}

bool GetBool(const json& j, const char* key, const std::string& where, bool fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) Bad(where, std::string(key) + " must be a boolean");
  return it->get<bool>();
}

int GetInt(const json& j, const char* key, const std::string& where, int fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) Bad(where, std::string(key) + " must be an integer");
  return it->get<int>();
}

std::pair<int, int> GetPair(const json& j, const char* key, const std::string& where,
                            std::pair<int, int> fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
      !(*it)[1].is_number_integer()) {
    Bad(where, std::string(key) + " must be a pair of integers");
  }
  return {(*it)[0].get<int>(), (*it)[1].get<int>()};
}

std::map<std::string, std::string> GetStringMap(const json& j, const char* key,
                                                const std::string& where) {
  std::map<std::string, std::string> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  RequireObject(*it, where + "." + key);
  for (const auto& [k, v] : it->items()) {
    if (!v.is_string()) Bad(where, std::string(key) + "." + k + " must be a string");
    out[k] = v.get<std::string>();
  }
  return out;
}

Condition ParseCondition(const json& j, const std::string& where) {
  RequireObject(j, where);
  AllowKeys(j, where, {"var", "equals", "not_equals", "changed", "unchanged"});
  Condition c;
  c.variable = RequireString(j, "var", where);
  int ops = 0;
  if (j.contains("equals")) {
    c.op = Condition::Op::kEquals;
    c.value = GetString(j, "equals", where);
    ++ops;
  }
  if (j.contains("not_equals")) {
    c.op = Condition::Op::kNotEquals;
    c.value = GetString(j, "not_equals", where);
    ++ops;
  }
  if (GetBool(j, "changed", where, false)) {
    c.op = Condition::Op::kChanged;
    ++ops;
  }
  if (GetBool(j, "unchanged", where, false)) {
    c.op = Condition::Op::kUnchanged;
    ++ops;
  }
  if (ops != 1) Bad(where, "condition needs exactly one operator");
  return c;
}

json ConditionToJson(const Condition& c) {
  json j;
  j["var"] = c.variable;
  switch (c.op) {
    case Condition::Op::kEquals: j["equals"] = c.value; break;
    case Condition::Op::kNotEquals: j["not_equals"] = c.value; break;
    case Condition::Op::kChanged: j["changed"] = true; break;
    case Condition::Op::kUnchanged: j["unchanged"] = true; break;
  }
  return j;
}

WidgetSpec ParseWidget(const json& j, const std::string& where) {
  RequireObject(j, where);
  AllowKeys(j, where,
            {"kind", "id", "text", "description", "size", "position", "clickable",
             "long_clickable", "editable", "scrollable", "visible", "checked",
             "text_var", "description_var", "render_var", "visible_when", "children"});
  WidgetSpec w;
  const std::string kind = RequireString(j, "kind", where);
  auto parsed = ParseWidgetKind(kind);
  if (!parsed) Bad(where, "unknown widget kind '" + kind + "'");
  w.kind = *parsed;
  w.resource_id = GetString(j, "id", where);
  const std::string here = w.resource_id.empty() ? where : where + "(" + w.resource_id + ")";
  w.default_text = GetString(j, "text", here);
  if (j.contains("description")) w.content_description = GetString(j, "description", here);
  std::tie(w.width, w.height) = GetPair(j, "size", here, {0, 0});
  std::tie(w.x, w.y) = GetPair(j, "position", here, {0, 0});
  w.clickable = GetBool(j, "clickable", here,
                        w.kind == WidgetKind::kButton || w.kind == WidgetKind::kCheckBox);
  w.long_clickable = GetBool(j, "long_clickable", here, false);
  w.editable = GetBool(j, "editable", here, w.kind == WidgetKind::kEditText);
  w.scrollable = GetBool(j, "scrollable", here, false);
  w.visible = GetBool(j, "visible", here, true);
  w.default_checked = GetBool(j, "checked", here, false);
  w.text_var = GetString(j, "text_var", here);
  w.description_var = GetString(j, "description_var", here);
  w.render_var = GetString(j, "render_var", here);
  if (j.contains("visible_when")) {
    w.visible_when = ParseCondition(j["visible_when"], here + ".visible_when");
  }
  if (auto it = j.find("children"); it != j.end()) {
    if (!it->is_array()) Bad(here, "children must be an array");
    for (size_t i = 0; i < it->size(); ++i) {
      w.children.push_back(ParseWidget((*it)[i], here + "/" + std::to_string(i)));
    }
  }
  return w;
}

json WidgetToJson(const WidgetSpec& w) {
  json j;
  j["kind"] = WidgetKindName(w.kind);
  if (!w.resource_id.empty()) j["id"] = w.resource_id;
  if (!w.default_text.empty()) j["text"] = w.default_text;
  if (w.content_description) j["description"] = *w.content_description;
  j["size"] = {w.width, w.height};
  j["position"] = {w.x, w.y};
  j["clickable"] = w.clickable;
  j["long_clickable"] = w.long_clickable;
  j["editable"] = w.editable;
  j["scrollable"] = w.scrollable;
  j["visible"] = w.visible;
  j["checked"] = w.default_checked;
  if (!w.text_var.empty()) j["text_var"] = w.text_var;
  if (!w.description_var.empty()) j["description_var"] = w.description_var;
  if (!w.render_var.empty()) j["render_var"] = w.render_var;
  if (w.visible_when) j["visible_when"] = ConditionToJson(*w.visible_when);
  if (!w.children.empty()) {
    j["children"] = json::array();
    for (const auto& c : w.children) j["children"].push_back(WidgetToJson(c));
  }
  return j;
}

Transition ParseTransition(const json& j, const std::string& where) {
  RequireObject(j, where);
  AllowKeys(j, where, {"on", "when", "effects"});
  Transition t;
  if (!j.contains("on")) Bad(where, "missing on");
  const json& on = j["on"];
  RequireObject(on, where + ".on");
  AllowKeys(on, where + ".on", {"kind", "target"});
  const std::string kind = RequireString(on, "kind", where + ".on");
  auto parsed = model::ParseEventKind(kind);
  if (!parsed) Bad(where, "unknown event kind '" + kind + "'");
  t.kind = *parsed;
  t.locator = GetString(on, "target", where + ".on");
  if (j.contains("when")) t.when = ParseCondition(j["when"], where + ".when");
  if (auto it = j.find("effects"); it != j.end()) {
    if (!it->is_array()) Bad(where, "effects must be an array");
    for (const auto& e : *it) {
      RequireObject(e, where + ".effects");
      AllowKeys(e, where + ".effects", {"op", "target", "value"});
      const std::string op = RequireString(e, "op", where + ".effects");
      auto parsed_op = ParseEffectOp(op);
      if (!parsed_op) Bad(where, "unknown effect op '" + op + "'");
      t.effects.push_back(
          {*parsed_op, GetString(e, "target", where), GetString(e, "value", where)});
    }
  }
  return t;
}

json TransitionToJson(const Transition& t) {
  json j;
  j["on"]["kind"] = model::EventKindName(t.kind);
  j["on"]["target"] = t.locator;
  if (t.when) j["when"] = ConditionToJson(*t.when);
  j["effects"] = json::array();
  for (const auto& e : t.effects) {
    json je;
    je["op"] = EffectOpName(e.op);
    if (!e.target.empty()) je["target"] = e.target;
    if (!e.value.empty()) je["value"] = e.value;
    j["effects"].push_back(je);
  }
  return j;
}

FaultSpec ParseFault(const json& j, const std::string& where) {
  RequireObject(j, where);
  AllowKeys(j, where,
            {"id", "pattern", "target", "arm_when", "latency", "trigger", "trigger_locator"});
  FaultSpec f;
  f.id = RequireString(j, "id", where);
  const std::string here = where + "(" + f.id + ")";
  const std::string pattern = RequireString(j, "pattern", here);
  auto parsed = ParseFaultPattern(pattern);
  if (!parsed) Bad(here, "unknown fault pattern '" + pattern + "'");
  f.pattern = *parsed;
  f.target = RequireString(j, "target", here);
  if (j.contains("arm_when")) f.arming_condition = ParseCondition(j["arm_when"], here);
  f.latency = GetInt(j, "latency", here, 1);
  const std::string trigger = GetString(j, "trigger", here, "recreate");
  auto parsed_trigger = ParseCrashTrigger(trigger);
  if (!parsed_trigger) Bad(here, "unknown trigger '" + trigger + "'");
  f.trigger = *parsed_trigger;
  f.trigger_locator = GetString(j, "trigger_locator", here);
  return f;
}

json FaultToJson(const FaultSpec& f) {
  json j;
  j["id"] = f.id;
  j["pattern"] = FaultPatternName(f.pattern);
  j["target"] = f.target;
  if (f.arming_condition) j["arm_when"] = ConditionToJson(*f.arming_condition);
  j["latency"] = f.latency;
  j["trigger"] = CrashTriggerName(f.trigger);
  if (!f.trigger_locator.empty()) j["trigger_locator"] = f.trigger_locator;
  return j;
}

ActivitySpec ParseActivity(const json& j, const std::string& where) {
  RequireObject(j, where);
  AllowKeys(j, where,
            {"name", "root", "variables", "save_policy", "restore_policy", "transitions",
             "faults", "scroll_extent"});
  ActivitySpec a;
  a.name = RequireString(j, "name", where);
  const std::string here = "activity " + a.name;
  if (!j.contains("root")) Bad(here, "missing root");
  a.root = ParseWidget(j["root"], here + " root");
  a.variables = GetStringMap(j, "variables", here);
  for (const auto& [var, v] : GetStringMap(j, "save_policy", here)) {
    if (v == "SAVED") {
      a.save_policy[var] = SavePolicy::kSaved;
    } else if (v == "NOT_SAVED") {
      a.save_policy[var] = SavePolicy::kNotSaved;
    } else {
      Bad(here, "unknown save policy '" + v + "'");
    }
  }
  for (const auto& [var, v] : GetStringMap(j, "restore_policy", here)) {
    if (v == "RESTORED") {
      a.restore_policy[var] = RestorePolicy::kRestored;
    } else if (v == "DEFAULTED") {
      a.restore_policy[var] = RestorePolicy::kDefaulted;
    } else if (v == "WRONG_VALUE") {
      a.restore_policy[var] = RestorePolicy::kWrongValue;
    } else {
      Bad(here, "unknown restore policy '" + v + "'");
    }
  }
  if (auto it = j.find("transitions"); it != j.end()) {
    if (!it->is_array()) Bad(here, "transitions must be an array");
    for (const auto& t : *it) a.transitions.push_back(ParseTransition(t, here + " transition"));
  }
  if (auto it = j.find("faults"); it != j.end()) {
    if (!it->is_array()) Bad(here, "faults must be an array");
    for (const auto& f : *it) a.faults.push_back(ParseFault(f, here + " fault"));
  }
  a.scroll_extent = GetInt(j, "scroll_extent", here, 0);
  return a;
}

json ActivityToJson(const ActivitySpec& a) {
  json j;
  j["name"] = a.name;
  j["root"] = WidgetToJson(a.root);
  j["variables"] = a.variables;
  json save = json::object();
  for (const auto& [var, p] : a.save_policy) {
    save[var] = p == SavePolicy::kSaved ? "SAVED" : "NOT_SAVED";
  }
  j["save_policy"] = save;
  json restore = json::object();
  for (const auto& [var, p] : a.restore_policy) {
    restore[var] = p == RestorePolicy::kRestored    ? "RESTORED"
                   : p == RestorePolicy::kDefaulted ? "DEFAULTED"
                                                    : "WRONG_VALUE";
  }
  j["restore_policy"] = restore;
  j["transitions"] = json::array();
  for (const auto& t : a.transitions) j["transitions"].push_back(TransitionToJson(t));
  j["faults"] = json::array();
  for (const auto& f : a.faults) j["faults"].push_back(FaultToJson(f));
  j["scroll_extent"] = a.scroll_extent;
  return j;
}

}  // namespace

AppSpec ParseAppSpec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSpecInvalid, std::string("malformed JSON: ") + e.what());
  }
  RequireObject(j, "app");
  AllowKeys(j, "app",
            {"format_version", "name", "initial_activity", "screen", "globals", "activities"});
  AppSpec app;
  app.format_version = GetInt(j, "format_version", "app", -1);
  if (app.format_version != kAppSpecFormatVersion) {
    Bad("app", "unsupported or missing format_version");
  }
  app.name = RequireString(j, "name", "app");
  app.initial_activity = RequireString(j, "initial_activity", "app");
  if (auto it = j.find("screen"); it != j.end()) {
    RequireObject(*it, "app.screen");
    AllowKeys(*it, "app.screen", {"width", "height"});
    app.screen.width = GetInt(*it, "width", "app.screen", app.screen.width);
    app.screen.height = GetInt(*it, "height", "app.screen", app.screen.height);
  }
  app.globals = GetStringMap(j, "globals", "app");
  auto it = j.find("activities");
  if (it == j.end() || !it->is_array()) Bad("app", "activities must be an array");
  for (const auto& a : *it) app.activities.push_back(ParseActivity(a, "activity"));
  FinalizeAppSpec(app);
  return app;
}

AppSpec LoadAppSpecFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseAppSpec(buf.str());
}

std::string SerializeAppSpec(const AppSpec& spec) {
  json j;
  j["format_version"] = spec.format_version;
  j["name"] = spec.name;
  j["initial_activity"] = spec.initial_activity;
  j["screen"] = {{"width", spec.screen.width}, {"height", spec.screen.height}};
  j["globals"] = spec.globals;
  j["activities"] = json::array();
  for (const auto& a : spec.activities) j["activities"].push_back(ActivityToJson(a));
  return j.dump(2) + "\n";
}

}  // namespace lossprobe::sim
