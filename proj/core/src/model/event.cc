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

#include "lossprobe/model/event.h"

#include <array>
#include <utility>

namespace lossprobe::model {
namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 7> kKindNames = {{
    {EventKind::kTouch, "TOUCH"},
    {EventKind::kLongTouch, "LONG_TOUCH"},
    {EventKind::kSetText, "SET_TEXT"},
    {EventKind::kKey, "KEY"},
    {EventKind::kScroll, "SCROLL"},
    {EventKind::kRotate, "ROTATE"},
    {EventKind::kDlrProbabilistic, "DLR_PROBABILISTIC"},
}};

}  // namespace

std::string_view EventKindName(EventKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<EventKind> ParseEventKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string EventId::ToString() const {
  std::string out(EventKindName(kind));
  if (kind == EventKind::kKey) {
    out += ':';
    out += key;
  } else if (!locator.empty()) {
    out += ':';
    out += locator;
  }
  return out;
}

std::optional<EventId> EventId::Parse(std::string_view text) {
  const size_t colon = text.find(':');
  const auto kind = ParseEventKind(text.substr(0, colon));
  if (!kind) return std::nullopt;
  EventId id;
  id.kind = *kind;
  if (colon == std::string_view::npos) {
    if (id.kind == EventKind::kKey) return std::nullopt;
    return id;
  }
  std::string rest(text.substr(colon + 1));
  if (rest.empty()) return std::nullopt;
  if (id.kind == EventKind::kKey) {
    if (rest != kKeyBack && rest != kKeyHome) return std::nullopt;
    id.key = std::move(rest);
  } else if (id.kind == EventKind::kRotate ||
             id.kind == EventKind::kDlrProbabilistic) {
    return std::nullopt;
  } else {
    id.locator = std::move(rest);
  }
  return id;
}

}  // namespace lossprobe::model
