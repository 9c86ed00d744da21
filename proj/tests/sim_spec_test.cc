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

#include <string>

#include "lossprobe/common/error.h"
#include "lossprobe/sim/app_spec.h"
#include "lossprobe/sim/app_spec_io.h"
#include "test_util.h"

namespace lossprobe::sim {
namespace {

using testing::LoadTestApp;

ErrorCode CodeOf(const std::string& json_text) {
  try {
    ParseAppSpec(json_text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed without error";
  return ErrorCode::kIo;
}

std::string Minimal(const std::string& activity_extra = "", const std::string& root_extra = "") {
  return R"({"format_version": 1, "name": "m", "initial_activity": "Main",
             "activities": [{"name": "Main", "root": {"kind": "container", "size": [720, 1152])" +
         root_extra + "}" + activity_extra + "}]}";
}

TEST(AppSpecTest, MinimalSpecParses) {
  const AppSpec app = ParseAppSpec(Minimal());
  EXPECT_EQ(app.name, "m");
  ASSERT_EQ(app.activities.size(), 1u);
  EXPECT_EQ(app.activities[0].root.kind, WidgetKind::kContainer);
  EXPECT_EQ(app.screen.width, 720);
  EXPECT_EQ(app.screen.height, 1280);
  EXPECT_EQ(app.screen.HeaderHeight(), 64);
  EXPECT_EQ(app.screen.FooterHeight(), 64);
}

TEST(AppSpecTest, TestAppsRoundTripThroughSerialization) {
  for (const char* name :
       {"beecount.json", "notes_fault_free.json", "crash_on_recreate.json", "compromised.json",
        "phantom_dialog.json", "destroyed_banner.json", "armed_by_global.json",
        "login_setup.json"}) {
    const AppSpec app = LoadTestApp(name);
    const std::string text = SerializeAppSpec(app);
    EXPECT_EQ(ParseAppSpec(text), app) << name;
    EXPECT_EQ(SerializeAppSpec(ParseAppSpec(text)), text) << name;
  }
}

TEST(AppSpecTest, LocatorsAreIdsOrIndexPaths) {
  const AppSpec app = LoadTestApp("login_setup.json");
  const ActivitySpec* inbox = app.FindActivity("Inbox");
  ASSERT_NE(inbox, nullptr);
  EXPECT_EQ(inbox->root.children[0].locator, "title");
  EXPECT_EQ(inbox->root.children[1].locator, "0/1");  // edit text without an id
  EXPECT_NE(FindWidget(inbox->root, "0/1"), nullptr);
}

TEST(AppSpecTest, UnknownKeysAreRejected) {
  EXPECT_EQ(CodeOf(Minimal(", \"colour\": 1")), ErrorCode::kSpecInvalid);
  EXPECT_EQ(CodeOf(Minimal("", ", \"colour\": 1")), ErrorCode::kSpecInvalid);
}

TEST(AppSpecTest, DanglingTransitionTargetIsInvalid) {
  EXPECT_EQ(CodeOf(Minimal(R"(, "transitions": [{"on": {"kind": "TOUCH", "target": "nope"}}])")),
            ErrorCode::kSpecInvalid);
  const std::string to_unknown_activity = Minimal(
      R"(, "transitions": [{"on": {"kind": "TOUCH", "target": "b"},
                           "effects": [{"op": "navigate", "target": "Elsewhere"}]}])",
      R"(, "children": [{"kind": "button", "id": "b", "size": [10, 10]}])");
  EXPECT_EQ(CodeOf(to_unknown_activity), ErrorCode::kSpecInvalid);
}

TEST(AppSpecTest, StructuralViolationsAreInvalid) {
  // Unknown initial activity.
  EXPECT_EQ(CodeOf(R"({"format_version": 1, "name": "m", "initial_activity": "X",
                       "activities": [{"name": "Main", "root": {"kind": "container"}}]})"),
            ErrorCode::kSpecInvalid);
  // Unsupported format version.
  EXPECT_EQ(CodeOf(R"({"format_version": 2, "name": "m", "initial_activity": "Main",
                       "activities": [{"name": "Main", "root": {"kind": "container"}}]})"),
            ErrorCode::kSpecInvalid);
  // Duplicate resource ids.
  EXPECT_EQ(CodeOf(Minimal("", R"(, "children": [{"kind": "label", "id": "a", "size": [1, 1]},
                                                   {"kind": "label", "id": "a", "size": [1, 1]}])")),
            ErrorCode::kSpecInvalid);
  // Binding to an undeclared variable.
  EXPECT_EQ(CodeOf(Minimal("", R"(, "children": [{"kind": "label", "text_var": "v", "size": [1, 1]}])")),
            ErrorCode::kSpecInvalid);
  // Fault on the root widget.
  EXPECT_EQ(CodeOf(Minimal(R"(, "faults": [{"id": "f", "pattern": "DESTROYED_ELEMENT", "target": "0"}])",
                           R"(, "children": [{"kind": "label", "id": "x", "size": [1, 1]}])")),
            ErrorCode::kSpecInvalid);
  // PHANTOM_ELEMENT must name a dialog.
  EXPECT_EQ(CodeOf(Minimal(R"(, "faults": [{"id": "f", "pattern": "PHANTOM_ELEMENT", "target": "x"}])",
                           R"(, "children": [{"kind": "label", "id": "x", "size": [1, 1]}])")),
            ErrorCode::kSpecInvalid);
  // Latency below one.
  EXPECT_EQ(CodeOf(Minimal(R"(, "variables": {"v": "1"},
                             "faults": [{"id": "f", "pattern": "COMPROMISED_STATE", "target": "v",
                                         "latency": 0}])")),
            ErrorCode::kSpecInvalid);
}

TEST(AppSpecTest, MalformedJsonIsInvalid) {
  EXPECT_EQ(CodeOf("{"), ErrorCode::kSpecInvalid);
  EXPECT_EQ(CodeOf("[]"), ErrorCode::kSpecInvalid);
}

TEST(AppSpecTest, MissingFileIsAnIoError) {
  try {
    LoadAppSpecFile(testing::TestData("does_not_exist.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(AppSpecTest, WrongValueSentinelIsStablePerVariable) {
  EXPECT_EQ(WrongValueSentinel("count"), WrongValueSentinel("count"));
  EXPECT_NE(WrongValueSentinel("count"), WrongValueSentinel("total"));
  EXPECT_EQ(WrongValueSentinel("count")[0], '?');
  EXPECT_EQ(WrongValueSentinel("count").size(), 7u);
}

}  // namespace
}  // namespace lossprobe::sim
