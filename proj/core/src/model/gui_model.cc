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

#include "lossprobe/model/gui_model.h"

#include <algorithm>
#include <sstream>

namespace lossprobe::model {
namespace {

const std::set<EventId> kNoEvents;

std::string EscapeDot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string AbstractState::ToString() const {
  std::string out = activity + " {";
  bool first = true;
  for (const auto& e : enabled) {
    if (!first) out += ", ";
    out += e.ToString();
    first = false;
  }
  return out + "}";
}

StateId GuiModel::AddState(const AbstractState& q) {
  auto [it, inserted] = ids_.try_emplace(q, static_cast<StateId>(states_.size()));
  if (inserted) states_.push_back(q);
  return it->second;
}

StateId GuiModel::AddInitial(const AbstractState& q) {
  const StateId id = AddState(q);
  if (initial_ < 0) initial_ = id;
  return id;
}

StateId GuiModel::Find(const AbstractState& q) const {
  auto it = ids_.find(q);
  return it == ids_.end() ? -1 : it->second;
}

void GuiModel::RecordTransition(const AbstractState& from, const EventId& e,
                                const AbstractState& to) {
  const StateId a = AddInitial(from);
  const StateId b = AddState(to);
  alphabet_.insert(e);
  delta_[{a, e}].insert(b);
  executed_[a].insert(e);
}

void GuiModel::RecordCrash(const AbstractState& from, const EventId& e) {
  const StateId a = AddInitial(from);
  alphabet_.insert(e);
  executed_[a].insert(e);
}

std::set<EventId> GuiModel::UnexecutedEvents(const AbstractState& q) const {
  auto it = ids_.find(q);
  if (it == ids_.end()) return q.enabled;
  const std::set<EventId>& done = executed(it->second);
  std::set<EventId> out;
  std::set_difference(q.enabled.begin(), q.enabled.end(), done.begin(), done.end(),
                      std::inserter(out, out.end()));
  return out;
}

const std::set<EventId>& GuiModel::executed(StateId id) const {
  auto it = executed_.find(id);
  return it == executed_.end() ? kNoEvents : it->second;
}

std::set<StateId> GuiModel::Successors(const AbstractState& q, const EventId& e) const {
  const StateId id = Find(q);
  if (id < 0) return {};
  auto it = delta_.find({id, e});
  return it == delta_.end() ? std::set<StateId>{} : it->second;
}

size_t GuiModel::TransitionCount() const {
  size_t n = 0;
  for (const auto& [_, targets] : delta_) n += targets.size();
  return n;
}

std::string GuiModel::CheckWellFormed() const {
  const auto n = static_cast<StateId>(states_.size());
  if (n > 0 && (initial_ < 0 || initial_ >= n)) return "initial state not in Q";
  for (const auto& [key, targets] : delta_) {
    const auto& [from, e] = key;
    if (from < 0 || from >= n) return "delta source outside Q";
    if (!alphabet_.count(e)) return "delta event outside Sigma: " + e.ToString();
    for (StateId to : targets) {
      if (to < 0 || to >= n) return "delta target outside Q";
    }
  }
  for (const auto& [id, events] : executed_) {
    if (id < 0 || id >= n) return "executed entry outside Q";
    const auto& enabled = states_[static_cast<size_t>(id)].enabled;
    if (!std::includes(enabled.begin(), enabled.end(), events.begin(), events.end())) {
      return "executed events not enabled in state " + std::to_string(id);
    }
  }
  return {};
}

std::string GuiModel::ExportGraph() const {
  std::ostringstream out;
  for (size_t i = 0; i < states_.size(); ++i) {
    out << "S\t" << i << '\t' << states_[i].activity << '\t';
    bool first = true;
    for (const auto& e : states_[i].enabled) {
      out << (first ? "" : " ") << e.ToString();
      first = false;
    }
    out << '\n';
  }
  for (const auto& [key, targets] : delta_) {
    for (StateId to : targets) {
      out << "T\t" << key.first << '\t' << key.second.ToString() << '\t' << to << '\n';
    }
  }
  return out.str();
}

std::string GuiModel::ExportDot() const {
  std::ostringstream out;
  out << "digraph gui_model {\n";
  for (size_t i = 0; i < states_.size(); ++i) {
    out << "  s" << i << " [label=\"" << i << ": " << EscapeDot(states_[i].activity)
        << "\"" << (static_cast<StateId>(i) == initial_ ? ", shape=doublecircle" : "")
        << "];\n";
  }
  for (const auto& [key, targets] : delta_) {
    for (StateId to : targets) {
      out << "  s" << key.first << " -> s" << to << " [label=\""
          << EscapeDot(key.second.ToString()) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace lossprobe::model
