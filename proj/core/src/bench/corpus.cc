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

#include "lossprobe/bench/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "lossprobe/common/error.h"
#include "lossprobe/common/rng.h"
#include "lossprobe/sim/app_spec_io.h"

namespace lossprobe::bench {
namespace {

using nlohmann::json;
using sim::ActivitySpec;
using sim::Condition;
using sim::Effect;
using sim::EffectOp;
using sim::FaultPattern;
using sim::FaultSpec;
using sim::Transition;
using sim::WidgetKind;
using sim::WidgetSpec;

constexpr std::array<std::string_view, 15> kActivityNames = {
    "Main",    "Inbox",   "Detail", "Editor", "Settings", "Profile", "Search", "Compose",
    "Preview", "Filters", "History", "About", "Account", "Export",  "Import"};

constexpr int kMaxChildren = 4;
constexpr int kMaxDepth = 3;
constexpr int kMargin = 16;
constexpr int kRowHeight = 80;
constexpr int kGap = 12;

enum class Input { kNone, kEditText, kCheckBox };
enum class Extra { kNone, kDialog, kScroll };

struct ActivityPlan {
  std::string name;
  std::vector<std::string> children;
  Input input = Input::kNone;
  Extra extra = Extra::kNone;
  std::optional<FaultPattern> fault;
  std::string fault_id;
  int latency = 1;
  bool conditional = false;
  std::string exemplar;
};

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

WidgetSpec Widget(WidgetKind kind, std::string id, std::string text, int x, int y, int w,
                  int h) {
  WidgetSpec s;
  s.kind = kind;
  s.resource_id = std::move(id);
  s.default_text = std::move(text);
  s.x = x;
  s.y = y;
  s.width = w;
  s.height = h;
  s.clickable = kind == WidgetKind::kButton || kind == WidgetKind::kCheckBox;
  s.editable = kind == WidgetKind::kEditText;
  return s;
}

Transition On(std::string locator, std::vector<Effect> effects,
              std::optional<Condition> when = std::nullopt) {
  return Transition{model::EventKind::kTouch, std::move(locator), std::move(when),
                    std::move(effects)};
}

Condition Equals(std::string var, std::string value) {
  return Condition{std::move(var), Condition::Op::kEquals, std::move(value)};
}

class Layout {
 public:
  explicit Layout(const sim::ScreenSpec& screen)
      : width_(screen.width - 2 * kMargin), page_(screen.PageHeight()) {}

  int Next(int height) {
    const int y = y_;
    y_ += height + kGap;
    if (y_ > page_) throw std::logic_error("generated layout overflows the first page");
    return y;
  }
  int width() const { return width_; }

 private:
  int width_;
  int page_;
  int y_ = kMargin;
};

ActivitySpec BuildActivity(const ActivityPlan& plan, const sim::ScreenSpec& screen) {
  ActivitySpec a;
  a.name = plan.name;
  Layout layout(screen);
  WidgetSpec& root = a.root;
  root.kind = WidgetKind::kContainer;
  root.width = screen.width;
  root.height = screen.PageHeight();
  auto add = [&](WidgetSpec w) { root.children.push_back(std::move(w)); };

  add(Widget(WidgetKind::kLabel, "title", plan.name, kMargin, layout.Next(72), layout.width(), 72));

  if (plan.exemplar == "drawer") {
    WidgetSpec toggle = Widget(WidgetKind::kButton, "drawer_toggle", "", kMargin,
                               layout.Next(kRowHeight), kRowHeight, kRowHeight);
    toggle.description_var = "drawer_desc";
    add(std::move(toggle));
    a.variables["drawer_open"] = "false";
    a.variables["drawer_desc"] = "Open navigation drawer";
    a.transitions.push_back(On("drawer_toggle",
                               {{EffectOp::kSet, "drawer_open", "true"},
                                {EffectOp::kSet, "drawer_desc", "Close navigation drawer"}},
                               Equals("drawer_open", "false")));
    a.transitions.push_back(On("drawer_toggle",
                               {{EffectOp::kSet, "drawer_open", "false"},
                                {EffectOp::kSet, "drawer_desc", "Open navigation drawer"}},
                               Equals("drawer_open", "true")));
  }

  switch (plan.input) {
    case Input::kEditText:
      add(Widget(WidgetKind::kEditText, "field", "", kMargin, layout.Next(kRowHeight),
                 layout.width(), kRowHeight));
      break;
    case Input::kCheckBox:
      add(Widget(WidgetKind::kCheckBox, "option", "Remember choice", kMargin,
                 layout.Next(kRowHeight), layout.width(), kRowHeight));
      break;
    case Input::kNone:
      break;
  }

  if (plan.conditional) {
    a.variables["armed"] = "false";
    add(Widget(WidgetKind::kButton, "arm", "Enable sync", kMargin, layout.Next(kRowHeight),
               layout.width(), kRowHeight));
    a.transitions.push_back(On("arm", {{EffectOp::kToggle, "armed", ""}}));
  }

  for (const auto& child : plan.children) {
    const std::string id = "open_" + Lower(child);
    add(Widget(WidgetKind::kButton, id, "Open " + child, kMargin, layout.Next(kRowHeight),
               layout.width(), kRowHeight));
    a.transitions.push_back(On(id, {{EffectOp::kNavigate, child, ""}}));
  }

  if (plan.exemplar == "zoom") {
    add(Widget(WidgetKind::kButton, "zoom_btn", "Zoom", kMargin, layout.Next(kRowHeight),
               layout.width(), kRowHeight));
    WidgetSpec map = Widget(WidgetKind::kContainer, "map_view", "", kMargin, layout.Next(360),
                            layout.width(), 360);
    map.render_var = "zoom";
    add(std::move(map));
    a.variables["zoom"] = "1";
    a.transitions.push_back(
        On("zoom_btn", {{EffectOp::kSet, "zoom", "2"}}, Equals("zoom", "1")));
    a.transitions.push_back(
        On("zoom_btn", {{EffectOp::kSet, "zoom", "1"}}, Equals("zoom", "2")));
  }

  if (plan.exemplar == "drawer") {
    WidgetSpec panel = Widget(WidgetKind::kContainer, "drawer_panel", "", kMargin,
                              layout.Next(2 * kRowHeight + kGap), layout.width(),
                              2 * kRowHeight + kGap);
    panel.visible_when = Equals("drawer_open", "true");
    panel.children.push_back(Widget(WidgetKind::kButton, "nav_inbox", "Inbox", panel.x, panel.y,
                                    panel.width, kRowHeight));
    panel.children.push_back(Widget(WidgetKind::kButton, "nav_settings", "Settings", panel.x,
                                    panel.y + kRowHeight + kGap, panel.width, kRowHeight));
    add(std::move(panel));
  }

  const bool needs_dialog =
      plan.extra == Extra::kDialog || plan.fault == FaultPattern::kPhantomElement;
  if (plan.extra == Extra::kDialog) {
    add(Widget(WidgetKind::kButton, "delete", "Delete", kMargin, layout.Next(kRowHeight),
               layout.width(), kRowHeight));
    a.transitions.push_back(On("delete", {{EffectOp::kShowDialog, "confirm_dialog", ""}}));
  }
  if (plan.extra == Extra::kScroll) {
    a.scroll_extent = 1;
    add(Widget(WidgetKind::kLabel, "more", "More about " + plan.name, kMargin,
               screen.PageHeight() + kMargin, layout.width(), 72));
  }
  if (needs_dialog) {
    const int dw = screen.width - 120;
    WidgetSpec dialog = Widget(WidgetKind::kDialog, "confirm_dialog", "", 60, 400, dw, 320);
    dialog.children.push_back(
        Widget(WidgetKind::kLabel, "dialog_message", "Delete this item?", 80, 430, dw - 40, 60));
    dialog.children.push_back(
        Widget(WidgetKind::kButton, "dialog_ok", "OK", 80, 520, dw - 40, kRowHeight));
    add(std::move(dialog));
    a.transitions.push_back(On("dialog_ok", {{EffectOp::kDismissDialog, "", ""}}));
  }

  if (plan.fault) {
    FaultSpec f;
    f.id = plan.fault_id;
    f.pattern = *plan.fault;
    f.latency = plan.latency;
    switch (f.pattern) {
      case FaultPattern::kCrash:
      case FaultPattern::kCompromisedState:
        a.variables["ready"] = "true";
        f.target = "ready";
        break;
      case FaultPattern::kDestroyedElement:
        f.target = "title";
        break;
      case FaultPattern::kPhantomElement:
        f.target = "confirm_dialog";
        break;
      case FaultPattern::kModifiedValue:
        f.target = plan.exemplar == "drawer"   ? "drawer_toggle"
                   : plan.exemplar == "zoom" ? "map_view"
                   : plan.input == Input::kCheckBox ? "option"
                                                    : "field";
        break;
    }
    if (plan.conditional) f.arming_condition = Equals("armed", "true");
    a.faults.push_back(std::move(f));
  }
  return a;
}

FaultPattern DrawPattern(const std::map<FaultPattern, double>& mix, double total, Rng& rng) {
  double u = rng.Uniform01() * total;
  FaultPattern last = FaultPattern::kCrash;
  for (const auto& [p, w] : mix) {
    if (w <= 0) continue;
    last = p;
    if (u < w) return p;
    u -= w;
  }
  return last;
}

void ValidateOptions(const CorpusOptions& o, double& total) {
  total = 0;
  for (const auto& [p, w] : o.mix) {
    if (!(w >= 0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidMix, "weight for " +
                                              std::string(sim::FaultPatternName(p)) +
                                              " must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0)) throw Error(ErrorCode::kInvalidMix, "all pattern weights are zero");
  const int max_names = static_cast<int>(kActivityNames.size());
  if (o.count < 1 || o.min_activities < 2 || o.max_activities > max_names ||
      o.min_activities > o.max_activities || o.min_faults < 0 || o.min_faults > o.max_faults ||
      o.min_faults > o.min_activities || !(o.conditional_arming >= 0 && o.conditional_arming <= 1)) {
    throw Error(ErrorCode::kSpecInvalid, "inconsistent corpus options");
  }
}

}  // namespace

std::string_view DetectabilityName(Detectability d) {
  switch (d) {
    case Detectability::kSnapshotOnly: return "SNAPSHOT_ONLY";
    case Detectability::kPropertyOnly: return "PROPERTY_ONLY";
    case Detectability::kBoth: return "BOTH";
    case Detectability::kCrash: return "CRASH";
    case Detectability::kUndetectable: return "UNDETECTABLE";
  }
  return "?";
}

std::optional<Detectability> ParseDetectability(std::string_view name) {
  for (auto d : {Detectability::kSnapshotOnly, Detectability::kPropertyOnly, Detectability::kBoth,
                 Detectability::kCrash, Detectability::kUndetectable}) {
    if (DetectabilityName(d) == name) return d;
  }
  return std::nullopt;
}

const ManifestApp* CorpusManifest::FindApp(std::string_view id) const {
  for (const auto& a : apps) {
    if (a.app_id == id) return &a;
  }
  return nullptr;
}

Corpus GenerateCorpus(const CorpusOptions& options) {
  double total = 0;
  ValidateOptions(options, total);
  const bool exemplars = options.exemplars && options.max_faults > 0 &&
                         options.mix.count(FaultPattern::kModifiedValue) &&
                         options.mix.at(FaultPattern::kModifiedValue) > 0;
  const int zoom_app = options.count > 1 ? 1 : 0;

  Corpus corpus;
  corpus.manifest.seed = options.seed;
  for (int k = 0; k < options.count; ++k) {
    Rng rng(MixSeed(options.seed, static_cast<uint64_t>(k) + 1));
    char id[16];
    std::snprintf(id, sizeof id, "app%03d", k);
    const int n = static_cast<int>(rng.Between(options.min_activities, options.max_activities));

    std::vector<ActivityPlan> plans(static_cast<size_t>(n));
    std::vector<int> depth(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      plans[i].name = std::string(kActivityNames[static_cast<size_t>(i)]);
      if (i > 0) {
        std::vector<int> candidates;
        for (int p = 0; p < i; ++p) {
          if (depth[p] < kMaxDepth && static_cast<int>(plans[p].children.size()) < kMaxChildren) {
            candidates.push_back(p);
          }
        }
        const int parent = candidates[rng.Below(candidates.size())];
        depth[i] = depth[parent] + 1;
        plans[parent].children.push_back(plans[i].name);
      }
      const uint64_t input = rng.Below(10);
      plans[i].input = input < 3 ? Input::kNone : input < 7 ? Input::kEditText : Input::kCheckBox;
      const uint64_t extra = rng.Below(4);
      plans[i].extra = extra < 2 ? Extra::kNone : extra == 2 ? Extra::kDialog : Extra::kScroll;
    }

    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) {
      std::swap(order[i], order[rng.Below(static_cast<uint64_t>(i) + 1)]);
    }
    const int nf = static_cast<int>(
        rng.Between(options.min_faults, std::min(options.max_faults, n)));

    std::vector<int> exemplar_slots;
    if (exemplars && k == 0) exemplar_slots.push_back(0);
    if (exemplars && k == zoom_app) exemplar_slots.push_back(k == 0 ? 1 : 0);
    for (size_t e = 0; e < exemplar_slots.size(); ++e) {
      auto it = std::find(order.begin(), order.end(), exemplar_slots[e]);
      std::rotate(order.begin() + static_cast<ptrdiff_t>(e), it, it + 1);
    }

    ManifestApp entry;
    entry.app_id = id;
    entry.spec_path = "apps/" + entry.app_id + ".json";
    entry.activities = n;
    for (int j = 0; j < std::max<int>(nf, static_cast<int>(exemplar_slots.size())); ++j) {
      ActivityPlan& plan = plans[static_cast<size_t>(order[j])];
      plan.fault_id = entry.app_id + "-f" + std::to_string(j + 1);
      if (j < static_cast<int>(exemplar_slots.size())) {
        const bool drawer = k == 0 && j == 0;
        plan.exemplar = drawer ? "drawer" : "zoom";
        plan.fault = FaultPattern::kModifiedValue;
        plan.extra = Extra::kNone;
        plan.input = Input::kNone;
      } else {
        plan.fault = DrawPattern(options.mix, total, rng);
        plan.conditional = rng.Bernoulli(options.conditional_arming);
        if (plan.fault == FaultPattern::kCompromisedState) {
          plan.latency = static_cast<int>(rng.Between(1, 3));
        }
        if (plan.fault == FaultPattern::kModifiedValue && plan.input == Input::kNone) {
          plan.input = Input::kEditText;
        }
      }
      entry.faults.push_back(
          {plan.fault_id, plan.name, *plan.fault, std::nullopt, plan.exemplar, std::nullopt});
    }

    sim::AppSpec spec;
    spec.name = entry.app_id;
    spec.initial_activity = plans[0].name;
    spec.screen = options.screen;
    for (const auto& plan : plans) spec.activities.push_back(BuildActivity(plan, spec.screen));
    sim::FinalizeAppSpec(spec);
    corpus.apps.push_back({entry.app_id, std::move(spec)});
    corpus.manifest.apps.push_back(std::move(entry));
  }
  return corpus;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "apps", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + (dir / "apps").string());
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!(out << text)) throw Error(ErrorCode::kIo, "cannot write " + p.string());
  };
  for (size_t i = 0; i < corpus.apps.size(); ++i) {
    write(dir / corpus.manifest.apps[i].spec_path, sim::SerializeAppSpec(corpus.apps[i].spec));
  }
  write(dir / "manifest.json", SerializeManifest(corpus.manifest));
}

std::string SerializeManifest(const CorpusManifest& m) {
  json j;
  j["schema_version"] = 1;
  j["seed"] = m.seed;
  j["apps"] = json::array();
  for (const auto& a : m.apps) {
    json ja;
    ja["app_id"] = a.app_id;
    ja["spec_path"] = a.spec_path;
    ja["activities"] = a.activities;
    ja["faults"] = json::array();
    for (const auto& f : a.faults) {
      json jf;
      jf["fault_id"] = f.fault_id;
      jf["activity"] = f.activity;
      jf["pattern"] = sim::FaultPatternName(f.pattern);
      jf["detectable_by"] =
          f.detectable_by ? json(DetectabilityName(*f.detectable_by)) : json(nullptr);
      jf["distance"] = f.distance ? json(*f.distance) : json(nullptr);
      if (!f.exemplar.empty()) jf["exemplar"] = f.exemplar;
      ja["faults"].push_back(jf);
    }
    j["apps"].push_back(ja);
  }
  return j.dump(2) + "\n";
}

CorpusManifest ParseManifest(const std::string& text) {
  try {
    const json j = json::parse(text);
    CorpusManifest m;
    m.seed = j.at("seed").get<uint64_t>();
    for (const auto& ja : j.at("apps")) {
      ManifestApp a;
      a.app_id = ja.at("app_id").get<std::string>();
      a.spec_path = ja.at("spec_path").get<std::string>();
      a.activities = ja.at("activities").get<int>();
      for (const auto& jf : ja.at("faults")) {
        ManifestFault f;
        f.fault_id = jf.at("fault_id").get<std::string>();
        f.activity = jf.at("activity").get<std::string>();
        auto pattern = sim::ParseFaultPattern(jf.at("pattern").get<std::string>());
        if (!pattern) throw Error(ErrorCode::kParse, "unknown pattern in manifest");
        f.pattern = *pattern;
        if (jf.contains("detectable_by") && !jf["detectable_by"].is_null()) {
          f.detectable_by = ParseDetectability(jf["detectable_by"].get<std::string>());
          if (!f.detectable_by) throw Error(ErrorCode::kParse, "unknown detectable_by");
        }
        if (jf.contains("distance") && !jf["distance"].is_null()) {
          f.distance = jf["distance"].get<int>();
        }
        f.exemplar = jf.value("exemplar", "");
        a.faults.push_back(std::move(f));
      }
      m.apps.push_back(std::move(a));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed manifest: ") + e.what());
  }
}

sim::AppSpec DrawerExemplarApp() {
  ActivityPlan main{"Main", {"Messages"}, Input::kNone, Extra::kNone,
                    FaultPattern::kModifiedValue, "drawer-f1", 1, false, "drawer"};
  ActivityPlan messages{"Messages", {}, Input::kEditText, Extra::kNone, std::nullopt, "", 1,
                        false, ""};
  sim::AppSpec spec;
  spec.name = "drawer-exemplar";
  spec.initial_activity = "Main";
  spec.activities.push_back(BuildActivity(main, spec.screen));
  spec.activities.push_back(BuildActivity(messages, spec.screen));
  sim::FinalizeAppSpec(spec);
  return spec;
}

sim::AppSpec ZoomExemplarApp() {
  ActivityPlan main{"Main", {"Places"}, Input::kNone, Extra::kNone,
                    FaultPattern::kModifiedValue, "zoom-f1", 1, false, "zoom"};
  ActivityPlan places{"Places", {}, Input::kCheckBox, Extra::kNone, std::nullopt, "", 1,
                      false, ""};
  sim::AppSpec spec;
  spec.name = "zoom-exemplar";
  spec.initial_activity = "Main";
  spec.activities.push_back(BuildActivity(main, spec.screen));
  spec.activities.push_back(BuildActivity(places, spec.screen));
  sim::FinalizeAppSpec(spec);
  return spec;
}

}  // namespace lossprobe::bench
