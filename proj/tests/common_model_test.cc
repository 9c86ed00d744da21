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

#include <set>
#include <string>
#include <vector>

#include "lossprobe/common/error.h"
#include "lossprobe/common/hash.h"
#include "lossprobe/common/rng.h"
#include "lossprobe/model/event.h"
#include "lossprobe/model/gui_model.h"
#include "lossprobe/sim/app_instance.h"
#include "test_util.h"

namespace lossprobe {
namespace {

using model::AbstractState;
using model::Event;
using model::EventId;
using model::EventKind;
using model::GuiModel;

TEST(HashTest, MatchesPublishedFnv1aVectors) {
  // Reference values from the FNV authors' test suite.
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs = differs || x != c.Next();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, BelowStaysInRangeAndCoversIt) {
  Rng r(7);
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 6000; ++i) {
    const uint64_t v = r.Below(6);
    ASSERT_LT(v, 6u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  for (int i = 0; i < 1000; ++i) {
    const int64_t v = r.Between(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
    const double u = r.Uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RngTest, MixSeedSeparatesSalts) {
  EXPECT_NE(MixSeed(1, 1), MixSeed(1, 2));
  EXPECT_NE(MixSeed(1, 1), MixSeed(2, 1));
  EXPECT_EQ(MixSeed(9, 3), MixSeed(9, 3));
}

TEST(ErrorTest, MessageCarriesStableCodeName) {
  const Error e(ErrorCode::kTraceDiverged, "step 4");
  EXPECT_EQ(e.code(), ErrorCode::kTraceDiverged);
  EXPECT_EQ(std::string(e.what()), "TRACE_DIVERGED: step 4");
  EXPECT_EQ(ErrorCodeName(ErrorCode::kManifestMismatch), "MANIFEST_MISMATCH");
}

TEST(EventIdTest, CanonicalTextRoundTrips) {
  const std::vector<EventId> ids = {
      Event::Touch("save_btn").Id(),  Event::LongTouch("row").Id(),
      Event::SetText("name", "abc").Id(), Event::Key(model::kKeyBack).Id(),
      Event::Scroll().Id(),           Event::Scroll("list").Id(),
      Event::Rotate().Id()};
  for (const auto& id : ids) {
    const auto parsed = EventId::Parse(id.ToString());
    ASSERT_TRUE(parsed.has_value()) << id.ToString();
    EXPECT_EQ(*parsed, id);
  }
  EXPECT_EQ(Event::Touch("save_btn").Id().ToString(), "TOUCH:save_btn");
  EXPECT_EQ(Event::Key(model::kKeyBack).Id().ToString(), "KEY:BACK");
  EXPECT_EQ(Event::Scroll().Id().ToString(), "SCROLL");
  EXPECT_FALSE(EventId::Parse("PINCH:x").has_value());
  EXPECT_FALSE(EventId::Parse("KEY").has_value());
}

TEST(EventIdTest, PayloadIsNotPartOfIdentity) {
  EXPECT_EQ(Event::SetText("f", "a").Id(), Event::SetText("f", "bbbb").Id());
}

AbstractState State(const std::string& activity, const std::vector<std::string>& touches) {
  AbstractState q{activity, {}};
  for (const auto& t : touches) q.enabled.insert(Event::Touch(t).Id());
  return q;
}

TEST(GuiModelTest, FirstRecordCreatesBothStates) {
  GuiModel m;
  const AbstractState q0 = State("Main", {"b"});
  const AbstractState q1 = State("Detail", {"c"});
  m.RecordTransition(q0, Event::Touch("b").Id(), q1);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.initial(), m.Find(q0));
  EXPECT_EQ(m.Successors(q0, Event::Touch("b").Id()), std::set<model::StateId>{m.Find(q1)});
  EXPECT_EQ(m.CheckWellFormed(), "");
}

TEST(GuiModelTest, RecordingIsIdempotent) {
  GuiModel m;
  const AbstractState q0 = State("Main", {"b"});
  const AbstractState q1 = State("Detail", {"c"});
  m.RecordTransition(q0, Event::Touch("b").Id(), q1);
  const std::string before = m.ExportGraph();
  m.RecordTransition(q0, Event::Touch("b").Id(), q1);
  EXPECT_EQ(m.ExportGraph(), before);
  EXPECT_EQ(m.TransitionCount(), 1u);
}

TEST(GuiModelTest, KeepsNondeterministicSuccessors) {
  GuiModel m;
  const AbstractState q0 = State("Main", {"b"});
  const AbstractState q1 = State("Detail", {"c"});
  const AbstractState q2 = State("Error", {});
  m.RecordTransition(q0, Event::Touch("b").Id(), q1);
  m.RecordTransition(q0, Event::Touch("b").Id(), q2);
  EXPECT_EQ(m.Successors(q0, Event::Touch("b").Id()),
            (std::set<model::StateId>{m.Find(q1), m.Find(q2)}));
  EXPECT_EQ(m.TransitionCount(), 2u);
}

TEST(GuiModelTest, CrashMarksEventExecutedWithoutSuccessor) {
  GuiModel m;
  const AbstractState q = State("Main", {"boom", "ok"});
  m.RecordCrash(q, Event::Touch("boom").Id());
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.TransitionCount(), 0u);
  EXPECT_TRUE(m.Successors(q, Event::Touch("boom").Id()).empty());
  EXPECT_EQ(m.UnexecutedEvents(q), std::set<EventId>{Event::Touch("ok").Id()});
  EXPECT_EQ(m.CheckWellFormed(), "");
}

TEST(GuiModelTest, UnexecutedEventsIsSetDifference) {
  GuiModel m;
  const AbstractState q = State("Main", {"e1", "e2", "e3"});
  EXPECT_EQ(m.UnexecutedEvents(q).size(), 3u);  // unknown state: everything
  m.RecordTransition(q, Event::Touch("e2").Id(), q);
  EXPECT_EQ(m.UnexecutedEvents(q),
            (std::set<EventId>{Event::Touch("e1").Id(), Event::Touch("e3").Id()}));
  m.RecordTransition(q, Event::Touch("e1").Id(), q);
  m.RecordTransition(q, Event::Touch("e3").Id(), q);
  EXPECT_TRUE(m.UnexecutedEvents(q).empty());
}

TEST(GuiModelTest, IsNewStateComparesStructurally) {
  GuiModel m;
  const AbstractState q0 = State("Main", {"a"});
  const AbstractState q1 = State("Main", {"a", "b"});  // one extra event
  EXPECT_TRUE(m.IsNewState(q0));
  m.AddInitial(q0);
  EXPECT_FALSE(m.IsNewState(q0));
  EXPECT_TRUE(m.IsNewState(q1));
  m.RecordTransition(q0, Event::Touch("a").Id(), q1);
  EXPECT_FALSE(m.IsNewState(q1));
  EXPECT_TRUE(m.IsNewState(State("Other", {"a"})));
}

TEST(GuiModelTest, ExportGraphListsStatesThenTransitions) {
  GuiModel m;
  const AbstractState q0 = State("Main", {"b"});
  const AbstractState q1 = State("Detail", {});
  m.RecordTransition(q0, Event::Touch("b").Id(), q1);
  EXPECT_EQ(m.ExportGraph(),
            "S\t0\tMain\tTOUCH:b\n"
            "S\t1\tDetail\t\n"
            "T\t0\tTOUCH:b\t1\n");
  EXPECT_NE(m.ExportDot().find("digraph"), std::string::npos);
}

// Abstraction over live simulator states.

sim::AppSpec EditApp() {
  using namespace testing;
  sim::ActivitySpec main = Activity("Main", {Label("title", "Main", 16), Edit("name", 100),
                                             Button("delete", "Delete", 192),
                                             Dialog("confirm", {Button("ok", "OK", 520)})});
  main.transitions.push_back(OnTouch("delete", {{sim::EffectOp::kShowDialog, "confirm", {}}}));
  main.transitions.push_back(OnTouch("ok", {{sim::EffectOp::kDismissDialog, {}, {}}}));
  return App({main});
}

AbstractState AbstractOf(const sim::AppInstance& inst) {
  return model::Abstract(inst.Foreground().name, inst.EnabledEvents());
}

TEST(AbstractionTest, TextValuesDoNotChangeAbstractState) {
  auto a = sim::AppInstance::Load(EditApp(), 1);
  auto b = a;
  ASSERT_FALSE(a.Apply(Event::SetText("name", "a")).crashed);
  ASSERT_FALSE(b.Apply(Event::SetText("name", "bbbb")).crashed);
  EXPECT_EQ(AbstractOf(a), AbstractOf(b));
}

TEST(AbstractionTest, OpenDialogChangesAbstractState) {
  auto a = sim::AppInstance::Load(EditApp(), 1);
  auto b = a;
  ASSERT_FALSE(b.Apply(Event::Touch("delete")).crashed);
  EXPECT_NE(AbstractOf(a), AbstractOf(b));
  // Only the dialog button and the keys remain.
  std::set<EventId> expected = {Event::Touch("ok").Id(), Event::Key(model::kKeyBack).Id(),
                                Event::Key(model::kKeyHome).Id()};
  EXPECT_EQ(AbstractOf(b).enabled, expected);
}

TEST(AbstractionTest, InitialScreenOfEmptyAppIsItsOwnState) {
  auto inst = sim::AppInstance::Load(testing::App({testing::Activity("Blank", {})}), 1);
  GuiModel m;
  const model::StateId q0 = m.AddInitial(AbstractOf(inst));
  EXPECT_EQ(q0, 0);
  EXPECT_EQ(m.state(q0).activity, "Blank");
  EXPECT_EQ(m.state(q0).enabled, (std::set<EventId>{Event::Key(model::kKeyBack).Id(),
                                                     Event::Key(model::kKeyHome).Id()}));
}

}  // namespace
}  // namespace lossprobe
