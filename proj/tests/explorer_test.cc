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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lossprobe/common/error.h"
#include "lossprobe/common/rng.h"
#include "lossprobe/explorer/explorer.h"
#include "lossprobe/sim/app_instance.h"
#include "lossprobe/sim/driver.h"
#include "test_util.h"

namespace lossprobe::explorer {
namespace {

using model::Event;
using model::EventId;
using model::EventKind;
using namespace lossprobe::testing;

ExplorerConfig Actions(int64_t n, uint64_t seed = 1, double epsilon = 0.1) {
  ExplorerConfig c;
  c.max_actions = n;
  c.seed = seed;
  c.epsilon = epsilon;
  return c;
}

ErrorCode CodeOf(auto fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIo;
}

TEST(ExplorerConfigTest, ValidatesBudgetAndEpsilon) {
  ExplorerConfig c;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kBudgetInvalid);  // no budget
  c.max_actions = 10;
  c.Validate();
  c.max_seconds = 1.0;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kBudgetInvalid);  // both
  c.max_seconds.reset();
  c.max_actions = 0;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kBudgetInvalid);
  c.max_actions = 10;
  c.epsilon = 1.5;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kBudgetInvalid);
  c.epsilon = -0.1;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kBudgetInvalid);
  c.epsilon = 1.0;
  c.settle_retries = -1;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kBudgetInvalid);
}

// ChooseAction over a hand-built model.

std::vector<Event> Touches(const std::vector<std::string>& ids) {
  std::vector<Event> out;
  for (const auto& id : ids) out.push_back(Event::Touch(id));
  return out;
}

model::AbstractState StateOf(const std::vector<Event>& enabled) {
  return model::Abstract("Main", enabled);
}

std::string Key(const Event& e) {
  return e.kind == EventKind::kDlrProbabilistic ? "DLR" : e.Id().ToString();
}

TEST(ChooseActionTest, EpsilonOneIsUniformOverAllActionsAndDlr) {
  const auto enabled = Touches({"a", "b", "c", "d"});
  const model::AbstractState q = StateOf(enabled);
  model::GuiModel m;
  m.RecordTransition(q, enabled[0].Id(), q);  // executed events still count
  Rng rng(2024);
  constexpr int kDraws = 100000;
  std::map<std::string, int> counts;
  for (int i = 0; i < kDraws; ++i) ++counts[Key(ChooseAction(m, q, enabled, rng, 1.0))];
  ASSERT_EQ(counts.size(), 5u);
  const double p = 1.0 / 5;
  const double sigma = std::sqrt(kDraws * p * (1 - p));
  for (const auto& [k, n] : counts) {
    EXPECT_LE(std::abs(n - kDraws * p), 3 * sigma) << k;
  }
}

TEST(ChooseActionTest, SingleUnexecutedActionAtEpsilonZeroSplitsWithDlr) {
  const auto enabled = Touches({"done", "fresh"});
  const model::AbstractState q = StateOf(enabled);
  model::GuiModel m;
  m.RecordTransition(q, Event::Touch("done").Id(), q);
  Rng rng(7);
  constexpr int kDraws = 20000;
  std::map<std::string, int> counts;
  for (int i = 0; i < kDraws; ++i) ++counts[Key(ChooseAction(m, q, enabled, rng, 0.0))];
  EXPECT_EQ(counts.count("TOUCH:done"), 0u);
  const double sigma = std::sqrt(kDraws * 0.25);
  EXPECT_LE(std::abs(counts["TOUCH:fresh"] - kDraws / 2.0), 3 * sigma);
  EXPECT_LE(std::abs(counts["DLR"] - kDraws / 2.0), 3 * sigma);
}

TEST(ChooseActionTest, ExhaustedStateFallsBackToAllActions) {
  const auto enabled = Touches({"a", "b"});
  const model::AbstractState q = StateOf(enabled);
  model::GuiModel m;
  for (const auto& e : enabled) m.RecordTransition(q, e.Id(), q);
  ASSERT_TRUE(m.UnexecutedEvents(q).empty());
  Rng rng(9);
  std::map<std::string, int> counts;
  for (int i = 0; i < 3000; ++i) ++counts[Key(ChooseAction(m, q, enabled, rng, 0.0))];
  EXPECT_EQ(counts.size(), 3u);
  for (const auto& [k, n] : counts) EXPECT_GT(n, 800) << k;
}

TEST(ChooseActionTest, AlwaysReturnsEnabledEventOrDlr) {
  const auto enabled = Touches({"a", "b", "c"});
  const model::AbstractState q = StateOf(enabled);
  model::GuiModel m;
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Event e = ChooseAction(m, q, enabled, rng, 0.3);
    if (e.kind == EventKind::kDlrProbabilistic) continue;
    EXPECT_TRUE(e.Id() == enabled[0].Id() || e.Id() == enabled[1].Id() ||
                e.Id() == enabled[2].Id());
  }
}

TEST(FillValueTest, DeterministicNonEmptyAndNotDefault) {
  for (uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    for (const char* loc : {"note", "field", "0/3"}) {
      const std::string v = FillValue(loc, seed, "");
      EXPECT_FALSE(v.empty());
      EXPECT_EQ(v, FillValue(loc, seed, ""));
      EXPECT_NE(FillValue(loc, seed, v), v);  // collides with default: altered
    }
  }
  EXPECT_NE(FillValue("a", 1, ""), FillValue("b", 1, ""));
}

// Campaigns.

TEST(CampaignTest, SingleActivityFaultFreeAppIsNeutral) {
  const auto app = Shared(App({Activity("Main", {Label("title", "Main", 16), Edit("name", 100),
                                                 Check("opt", "Option", 200)})}));
  const CampaignResult r = RunCampaign(app, Actions(100, 3));
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(r.summary.ActivityCoverage(), 1.0);
  EXPECT_LE(r.summary.actions, 100);
  EXPECT_GE(r.summary.systematic_dlr, 1);
}

TEST(CampaignTest, ModifiedValueOnInitialActivityFoundByFirstSystematicDlr) {
  sim::ActivitySpec main =
      Activity("Main", {Label("title", "Main", 16), Edit("field", 100), Button("go", "Go", 200)});
  sim::FaultSpec f;
  f.id = "reset-field";
  f.pattern = sim::FaultPattern::kModifiedValue;
  f.target = "field";
  main.faults.push_back(f);
  const auto app = Shared(App({main}));
  const CampaignResult r = RunCampaign(app, Actions(50, 3));
  ASSERT_FALSE(r.findings.empty());
  const Finding& first = r.findings.front();
  EXPECT_EQ(first.kind, FindingKind::kDataLoss);
  EXPECT_EQ(first.origin, "systematic");
  EXPECT_EQ(first.fired_faults, std::vector<std::string>{"reset-field"});
  // Hand count: one SET_TEXT fill-in, then two rotations.
  EXPECT_EQ(first.action, 3);
  int widgets = 0;
  sim::ForEachWidget(app->activities[0].root, [&](const sim::WidgetSpec&) { ++widgets; });
  EXPECT_LE(first.action, widgets + 4);
}

TEST(CampaignTest, FillInWritesNonEmptyValueBeforeCapture) {
  sim::ActivitySpec main = Activity("Main", {Edit("field", 100)});
  sim::FaultSpec f;
  f.id = "reset-field";
  f.pattern = sim::FaultPattern::kModifiedValue;
  f.target = "field";
  main.faults.push_back(f);
  const CampaignResult r = RunCampaign(Shared(App({main})), Actions(3, 5));
  // The whole budget is the fill-in plus the double rotation.
  EXPECT_EQ(r.summary.actions, 3);
  EXPECT_EQ(r.summary.systematic_dlr, 1);
  ASSERT_EQ(r.findings.size(), 1u);
  const Finding& finding = r.findings[0];
  ASSERT_TRUE(finding.before.properties.has_value());
  const std::string expected = FillValue("field", 5, "");
  EXPECT_FALSE(expected.empty());
  EXPECT_EQ(finding.before.properties->root.children[0].text, std::optional<std::string>(expected));
  EXPECT_EQ(finding.after.properties->root.children[0].text, std::optional<std::string>(""));
  ASSERT_TRUE(finding.trace.front().event.has_value());
  EXPECT_EQ(finding.trace.front().event->kind, EventKind::kSetText);
  EXPECT_EQ(finding.trace.front().event->text, expected);
}

TEST(CampaignTest, PhantomDialogReportedByPropertyOracle) {
  ExplorerConfig c = Actions(100, 1);
  c.oracle_mode = oracles::OracleMode::kProperty;
  const CampaignResult r = RunCampaign(Shared(LoadTestApp("phantom_dialog.json")), c);
  ASSERT_FALSE(r.findings.empty());
  const Finding& f = r.findings.front();
  EXPECT_EQ(f.kind, FindingKind::kDataLoss);
  EXPECT_EQ(f.verdict.fired, std::set<oracles::Strategy>{oracles::Strategy::kProperty});
  EXPECT_EQ(f.fired_faults, std::vector<std::string>{"ghost-dialog"});
  ASSERT_TRUE(f.property.has_value());
  EXPECT_EQ(f.property->field, "child_count");
}

TEST(CampaignTest, CompromisedStateEventuallyCrashes) {
  const CampaignResult r = RunCampaign(Shared(LoadTestApp("compromised.json")), Actions(200, 1));
  ASSERT_GE(r.summary.crash_findings, 1);
  const auto it = std::find_if(r.findings.begin(), r.findings.end(),
                               [](const Finding& f) { return f.kind == FindingKind::kCrash; });
  ASSERT_NE(it, r.findings.end());
  EXPECT_EQ(it->activity, "Player");
  EXPECT_EQ(it->fired_faults, std::vector<std::string>{"leaked-session"});
  EXPECT_EQ(r.summary.data_loss_findings, 0);
}

TEST(CampaignTest, CrashIsReportedAndAppReloaded) {
  const CampaignResult r =
      RunCampaign(Shared(LoadTestApp("crash_on_recreate.json")), Actions(300, 2));
  ASSERT_GE(r.summary.crash_findings, 1);
  EXPECT_EQ(r.summary.reloads, r.summary.crash_findings);
  for (const Finding& f : r.findings) {
    if (f.kind != FindingKind::kCrash) continue;
    EXPECT_EQ(f.activity, "Settings");
    EXPECT_EQ(f.fired_faults, std::vector<std::string>{"settings-crash"});
  }
  EXPECT_LE(r.summary.actions, 300);
}

TEST(CampaignTest, BudgetIsNeverExceeded) {
  for (int64_t budget : {1, 2, 3, 7, 50, 333}) {
    const CampaignResult r =
        RunCampaign(Shared(LoadTestApp("notes_fault_free.json")), Actions(budget, 4));
    EXPECT_LE(r.summary.actions, budget);
    EXPECT_GE(r.summary.actions, budget - 1);  // a DLR needs two actions
  }
}

TEST(CampaignTest, EveryStateGetsOneSystematicDlr) {
  const CampaignResult r =
      RunCampaign(Shared(LoadTestApp("notes_fault_free.json")), Actions(2000, 6));
  EXPECT_EQ(r.summary.systematic_dlr, r.summary.states);
  EXPECT_EQ(static_cast<size_t>(r.summary.states), r.model.size());
  EXPECT_TRUE(r.findings.empty());
}

TEST(CampaignTest, FindingTracesEndWithDoubleRotationAndCheck) {
  for (const char* name : {"beecount.json", "phantom_dialog.json", "destroyed_banner.json",
                           "armed_by_global.json"}) {
    const CampaignResult r = RunCampaign(Shared(LoadTestApp(name)), Actions(300, 8));
    ASSERT_FALSE(r.findings.empty()) << name;
    for (const Finding& f : r.findings) {
      if (f.kind != FindingKind::kDataLoss) continue;
      const auto& t = f.trace;
      ASSERT_GE(t.size(), 4u);
      EXPECT_EQ(t.back().marker, Marker::kCheck);
      EXPECT_EQ(t.back().verdict, std::optional<oracles::Outcome>(oracles::Outcome::kFail));
      EXPECT_EQ(t[t.size() - 2].event->kind, EventKind::kRotate);
      EXPECT_EQ(t[t.size() - 3].event->kind, EventKind::kRotate);
      EXPECT_EQ(t[t.size() - 4].marker, Marker::kCapture);
      for (size_t i = 1; i < t.size(); ++i) EXPECT_LT(t[i - 1].index, t[i].index);
    }
  }
}

TEST(CampaignTest, DeterministicForFixedConfig) {
  const auto app = Shared(LoadTestApp("beecount.json"));
  const CampaignResult a = RunCampaign(app, Actions(400, 12));
  const CampaignResult b = RunCampaign(app, Actions(400, 12));
  EXPECT_EQ(a.model.ExportGraph(), b.model.ExportGraph());
  ASSERT_EQ(a.findings.size(), b.findings.size());
  for (size_t i = 0; i < a.findings.size(); ++i) {
    EXPECT_EQ(a.findings[i].trace, b.findings[i].trace);
    EXPECT_EQ(a.findings[i].after, b.findings[i].after);
  }
  EXPECT_EQ(a.summary.actions, b.summary.actions);
  EXPECT_EQ(a.summary.probabilistic_dlr, b.summary.probabilistic_dlr);
}

TEST(CampaignTest, FindingsReplayToSameVerdict) {
  for (const char* name : {"beecount.json", "phantom_dialog.json", "crash_on_recreate.json",
                           "compromised.json", "armed_by_global.json"}) {
    const auto app = Shared(LoadTestApp(name));
    const ExplorerConfig c = Actions(300, 21);
    const CampaignResult r = RunCampaign(app, c);
    ASSERT_FALSE(r.findings.empty()) << name;
    for (const Finding& f : r.findings) {
      sim::SimDriver driver(app, 1234);  // seed does not affect a recorded trace
      const ReplayResult replay = Replay(driver, f.trace, c.oracle_mode, c.settle_retries);
      EXPECT_TRUE(ReplayMatches(f, replay)) << name << " " << f.id;
    }
  }
}

TEST(CampaignTest, SetupActionsRunFirstAndAfterReload) {
  ExplorerConfig c = Actions(200, 1);
  c.setup_actions = {Event::SetText("user", "alice"), Event::Touch("login")};
  const CampaignResult r = RunCampaign(Shared(LoadTestApp("login_setup.json")), c);
  EXPECT_TRUE(r.summary.visited_activities.count("Inbox"));
  EXPECT_GE(r.summary.setup_actions, 2);
  EXPECT_LE(r.summary.actions, 200);  // setup is not charged to the budget
}

TEST(CampaignTest, DisabledSetupActionFails) {
  ExplorerConfig c = Actions(20, 1);
  c.setup_actions = {Event::Touch("no_such_button")};
  EXPECT_EQ(CodeOf([&] { RunCampaign(Shared(LoadTestApp("login_setup.json")), c); }),
            ErrorCode::kSetupFailed);
}

TEST(ObserverTest, SettleWaitsOutRecreationLag) {
  const auto app = Shared(LoadTestApp("notes_fault_free.json"));
  sim::NoisyDriver noisy(app, 1, sim::NoiseOptions{2, 0});
  sim::SimDriver clean(app, 1);
  noisy.Load();
  clean.Load();
  const oracles::Observation expected = Observe(clean);
  noisy.Rotate();
  EXPECT_EQ(Settle(noisy, 3), expected);
  noisy.Rotate();
  EXPECT_NE(Settle(noisy, 0), expected);
}

TEST(CampaignTest, NoisyDriverSpuriousFindingsDependOnRetries) {
  const auto app = Shared(LoadTestApp("notes_fault_free.json"));
  ExplorerConfig c = Actions(200, 1);
  sim::NoisyDriver settled(app, 1, sim::NoiseOptions{2, 0});
  EXPECT_TRUE(RunCampaign(settled, c).findings.empty());
  c.settle_retries = 0;
  sim::NoisyDriver hasty(app, 1, sim::NoiseOptions{2, 0});
  const CampaignResult r = RunCampaign(hasty, c);
  ASSERT_FALSE(r.findings.empty());
  for (const Finding& f : r.findings) {
    EXPECT_EQ(f.spurious_hint, kHintSlowRecreation);
    EXPECT_TRUE(f.fired_faults.empty());
  }
}

}  // namespace
}  // namespace lossprobe::explorer
