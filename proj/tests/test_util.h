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

// Small builders for hand-written apps in tests.

#ifndef LOSSPROBE_TESTS_TEST_UTIL_H_
#define LOSSPROBE_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lossprobe/sim/app_spec.h"
#include "lossprobe/sim/app_spec_io.h"

namespace lossprobe::testing {

inline std::filesystem::path TestData(const std::string& name) {
  return std::filesystem::path(LOSSPROBE_TESTDATA_DIR) / name;
}

inline sim::AppSpec LoadTestApp(const std::string& name) {
  return sim::LoadAppSpecFile(TestData(name));
}

inline sim::WidgetSpec Widget(sim::WidgetKind kind, std::string id, int y, int h = 80) {
  sim::WidgetSpec w;
  w.kind = kind;
  w.resource_id = std::move(id);
  w.x = 16;
  w.y = y;
  w.width = 688;
  w.height = h;
  w.clickable = kind == sim::WidgetKind::kButton || kind == sim::WidgetKind::kCheckBox;
  w.editable = kind == sim::WidgetKind::kEditText;
  return w;
}

inline sim::WidgetSpec Label(std::string id, std::string text, int y) {
  sim::WidgetSpec w = Widget(sim::WidgetKind::kLabel, std::move(id), y, 72);
  w.default_text = std::move(text);
  return w;
}

inline sim::WidgetSpec Button(std::string id, std::string text, int y) {
  sim::WidgetSpec w = Widget(sim::WidgetKind::kButton, std::move(id), y);
  w.default_text = std::move(text);
  return w;
}

inline sim::WidgetSpec Edit(std::string id, int y) {
  return Widget(sim::WidgetKind::kEditText, std::move(id), y);
}

inline sim::WidgetSpec Check(std::string id, std::string text, int y) {
  sim::WidgetSpec w = Widget(sim::WidgetKind::kCheckBox, std::move(id), y);
  w.default_text = std::move(text);
  return w;
}

inline sim::WidgetSpec Dialog(std::string id, std::vector<sim::WidgetSpec> children) {
  sim::WidgetSpec w = Widget(sim::WidgetKind::kDialog, std::move(id), 400, 320);
  w.x = 60;
  w.width = 600;
  w.children = std::move(children);
  return w;
}

inline sim::WidgetSpec Root(std::vector<sim::WidgetSpec> children) {
  sim::WidgetSpec w;
  w.kind = sim::WidgetKind::kContainer;
  w.width = 720;
  w.height = 1152;
  w.children = std::move(children);
  return w;
}

inline sim::Transition OnTouch(std::string locator, std::vector<sim::Effect> effects) {
  sim::Transition t;
  t.kind = model::EventKind::kTouch;
  t.locator = std::move(locator);
  t.effects = std::move(effects);
  return t;
}

inline sim::Effect Navigate(std::string activity) {
  return {sim::EffectOp::kNavigate, std::move(activity), {}};
}

inline sim::ActivitySpec Activity(std::string name, std::vector<sim::WidgetSpec> children) {
  sim::ActivitySpec a;
  a.name = std::move(name);
  a.root = Root(std::move(children));
  return a;
}

inline sim::AppSpec App(std::vector<sim::ActivitySpec> activities, std::string name = "test") {
  sim::AppSpec app;
  app.name = std::move(name);
  app.initial_activity = activities.front().name;
  app.activities = std::move(activities);
  sim::FinalizeAppSpec(app);
  return app;
}

inline std::shared_ptr<const sim::AppSpec> Shared(sim::AppSpec app) {
  return std::make_shared<const sim::AppSpec>(std::move(app));
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("lossprobe-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter_++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace lossprobe::testing

#endif  // LOSSPROBE_TESTS_TEST_UTIL_H_
