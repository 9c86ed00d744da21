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

#ifndef LOSSPROBE_MODEL_EVENT_H_
#define LOSSPROBE_MODEL_EVENT_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace lossprobe::model {

enum class EventKind {
  kTouch,
  kLongTouch,
  kSetText,
  kKey,
  kScroll,
  kRotate,
  kDlrProbabilistic,
};

std::string_view EventKindName(EventKind kind);
std::optional<EventKind> ParseEventKind(std::string_view name);

inline constexpr std::string_view kKeyBack = "BACK";
inline constexpr std::string_view kKeyHome = "HOME";

// Identity of an event for model purposes: (kind, locator, key name). The
// SET_TEXT payload is deliberately not part of it.
struct EventId {
  EventKind kind = EventKind::kTouch;
  std::string locator;  // empty when the event is not widget-addressed
  std::string key;      // key name for kKey, empty otherwise

  auto operator<=>(const EventId&) const = default;
  bool operator==(const EventId&) const = default;

  // Canonical text form, e.g. "TOUCH:save_btn", "KEY:BACK", "SCROLL".
  std::string ToString() const;
  static std::optional<EventId> Parse(std::string_view text);
};

struct Event {
  EventKind kind = EventKind::kTouch;
  std::string locator;
  std::string key;
  std::string text;  // SET_TEXT payload

  EventId Id() const { return EventId{kind, locator, key}; }

  static Event Touch(std::string locator) {
    return {EventKind::kTouch, std::move(locator), {}, {}};
  }
  static Event LongTouch(std::string locator) {
    return {EventKind::kLongTouch, std::move(locator), {}, {}};
  }
  static Event SetText(std::string locator, std::string text) {
    return {EventKind::kSetText, std::move(locator), {}, std::move(text)};
  }
  static Event Key(std::string_view name) {
    return {EventKind::kKey, {}, std::string(name), {}};
  }
  static Event Scroll(std::string locator = {}) {
    return {EventKind::kScroll, std::move(locator), {}, {}};
  }
  static Event Rotate() { return {EventKind::kRotate, {}, {}, {}}; }
  static Event ProbabilisticDlr() {
    return {EventKind::kDlrProbabilistic, {}, {}, {}};
  }

  static Event FromId(const EventId& id, std::string text = {}) {
    return {id.kind, id.locator, id.key, std::move(text)};
  }

  bool operator==(const Event&) const = default;
};

}  // namespace lossprobe::model

#endif  // LOSSPROBE_MODEL_EVENT_H_
