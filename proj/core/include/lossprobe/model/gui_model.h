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

#ifndef LOSSPROBE_MODEL_GUI_MODEL_H_
#define LOSSPROBE_MODEL_GUI_MODEL_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lossprobe/model/event.h"

namespace lossprobe::model {

// Enabledness abstraction of a screen: the activity plus the identities of
// its enabled events. Concrete values are deliberately absent.
struct AbstractState {
  std::string activity;
  std::set<EventId> enabled;

  auto operator<=>(const AbstractState&) const = default;
  bool operator==(const AbstractState&) const = default;

  std::string ToString() const;
};

template <typename EventRange>
AbstractState Abstract(std::string activity, const EventRange& enabled_events) {
  AbstractState q{std::move(activity), {}};
  for (const auto& e : enabled_events) q.enabled.insert(e.Id());
  return q;
}

using StateId = int;

// Non-deterministic automaton (Q, Sigma, q0, delta) grown during a campaign.
class GuiModel {
 public:
  // Registers q as the initial state if none is set yet. Returns its id.
  StateId AddInitial(const AbstractState& q);
  StateId AddState(const AbstractState& q);

  bool IsNewState(const AbstractState& q) const { return !ids_.count(q); }
  // -1 when q is not in the model.
  StateId Find(const AbstractState& q) const;

  void RecordTransition(const AbstractState& from, const EventId& e, const AbstractState& to);
  // Marks e executed in `from` without a successor (the app crashed).
  void RecordCrash(const AbstractState& from, const EventId& e);

  // enabled(q) minus executed[q]; the full enabled set for unknown states.
  std::set<EventId> UnexecutedEvents(const AbstractState& q) const;

  size_t size() const { return states_.size(); }
  const AbstractState& state(StateId id) const { return states_.at(static_cast<size_t>(id)); }
  const std::vector<AbstractState>& states() const { return states_; }
  StateId initial() const { return initial_; }
  const std::set<EventId>& alphabet() const { return alphabet_; }
  const std::map<std::pair<StateId, EventId>, std::set<StateId>>& delta() const {
    return delta_;
  }
  const std::set<EventId>& executed(StateId id) const;
  // Image of delta for (q, e); empty when unknown.
  std::set<StateId> Successors(const AbstractState& q, const EventId& e) const;
  size_t TransitionCount() const;

  // Checks the automaton invariants; returns a description of the first
  // violation or an empty string.
  std::string CheckWellFormed() const;

  // State table ("S<TAB>id<TAB>activity<TAB>events") followed by one
  // "T<TAB>from<TAB>event<TAB>to" line per transition.
  std::string ExportGraph() const;
  std::string ExportDot() const;

 private:
  std::vector<AbstractState> states_;
  std::map<AbstractState, StateId> ids_;
  std::map<std::pair<StateId, EventId>, std::set<StateId>> delta_;
  std::map<StateId, std::set<EventId>> executed_;
  std::set<EventId> alphabet_;
  StateId initial_ = -1;
};

}  // namespace lossprobe::model

#endif  // LOSSPROBE_MODEL_GUI_MODEL_H_
