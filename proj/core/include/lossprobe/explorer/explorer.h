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

#ifndef LOSSPROBE_EXPLORER_EXPLORER_H_
#define LOSSPROBE_EXPLORER_EXPLORER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lossprobe/common/rng.h"
#include "lossprobe/model/event.h"
#include "lossprobe/model/gui_model.h"
#include "lossprobe/oracles/oracles.h"
#include "lossprobe/sim/app_spec.h"
#include "lossprobe/sim/driver.h"

namespace lossprobe::explorer {

struct ExplorerConfig {
  double epsilon = 0.1;
  // Exactly one budget kind must be set.
  std::optional<int64_t> max_actions;
  std::optional<double> max_seconds;
  uint64_t seed = 0;
  oracles::OracleMode oracle_mode = oracles::OracleMode::kBoth;
  std::vector<model::Event> setup_actions;
  int settle_retries = 3;

  // Throws Error(kBudgetInvalid) for a missing/double/non-positive budget,
  // a negative retry count or epsilon outside [0, 1].
  void Validate() const;
};

enum class Marker { kNone, kCapture, kCheck };
std::string_view MarkerName(Marker m);
std::optional<Marker> ParseMarker(std::string_view name);

// One trace entry: either a primitive event (marker kNone) or an oracle
// capture/check point. Setup events are part of the trace.
struct TraceStep {
  int64_t index = 0;
  std::optional<model::Event> event;
  Marker marker = Marker::kNone;
  model::StateId state = -1;  // abstract state reached; -1 in the middle of a composite action
  std::optional<oracles::Outcome> verdict;  // on check steps

  bool operator==(const TraceStep&) const = default;
};

enum class FindingKind { kDataLoss, kCrash };
std::string_view FindingKindName(FindingKind k);
std::optional<FindingKind> ParseFindingKind(std::string_view name);

// Spurious-failure hints derived from a confirmation observation taken
// right after a failing check.
inline constexpr std::string_view kHintSlowRecreation = "slow_recreation";
inline constexpr std::string_view kHintTimeVarying = "time_varying";

struct Finding {
  std::string id;
  FindingKind kind = FindingKind::kDataLoss;
  std::string activity;
  std::string origin;  // "systematic", "probabilistic" or "event"
  int64_t action = 0;  // actions executed when the finding was made
  model::StateId state = -1;
  oracles::CombinedVerdict verdict;
  std::optional<oracles::Verdict> snapshot;
  std::optional<oracles::Verdict> property;
  oracles::Observation before;
  oracles::Observation after;
  std::string spurious_hint;
  // Faults the driver reports as having taken effect during the checked
  // stop-starts (or the crashing fault). Empty for spurious failures.
  std::vector<std::string> fired_faults;
  std::vector<TraceStep> trace;
};

struct CampaignSummary {
  int64_t actions = 0;
  int64_t setup_actions = 0;
  int reloads = 0;
  int systematic_dlr = 0;
  int probabilistic_dlr = 0;
  int states = 0;
  int transitions = 0;
  int data_loss_findings = 0;
  int crash_findings = 0;
  int total_activities = 0;
  std::set<std::string> visited_activities;
  double elapsed_seconds = 0;  // wall clock; not deterministic

  double ActivityCoverage() const {
    return total_activities == 0
               ? 0.0
               : static_cast<double>(visited_activities.size()) / total_activities;
  }
};

struct CampaignResult {
  CampaignSummary summary;
  std::vector<Finding> findings;
  model::GuiModel model;
};

// Runs one campaign on `driver`. Throws Error(kSetupFailed),
// Error(kBudgetInvalid) or Error(kStartCrash).
CampaignResult RunCampaign(sim::Driver& driver, const ExplorerConfig& config);

// Convenience: campaign on a simulated instance seeded with config.seed.
CampaignResult RunCampaign(std::shared_ptr<const sim::AppSpec> app,
                           const ExplorerConfig& config);

// Epsilon-biased choice over the enabled events plus the probabilistic
// data-loss-revealing action (returned as a DLR_PROBABILISTIC event).
model::Event ChooseAction(const model::GuiModel& model, const model::AbstractState& q,
                          const std::vector<model::Event>& enabled, Rng& rng, double epsilon);

// Deterministic, non-empty fill-in text different from `default_text`.
std::string FillValue(std::string_view locator, uint64_t seed, std::string_view default_text);

// Reads observations until two consecutive ones are equal, at most
// `retries` extra reads, and returns the last one.
oracles::Observation Settle(sim::Driver& driver, int retries);
oracles::Observation Observe(sim::Driver& driver);

// Observe/Settle over reused frame and snapshot buffers.
class Observer {
 public:
  explicit Observer(sim::Driver& driver) : driver_(driver) {}

  void Observe(oracles::Observation& out);
  void Settle(int retries, oracles::Observation& out);

 private:
  sim::Driver& driver_;
  sim::GrayImage frame_;
  oracles::Observation next_;
};

struct ReplayResult {
  bool diverged = false;
  int64_t diverged_at = -1;  // trace index of the non-enabled event
  bool crashed = false;
  std::string crash_activity;
  std::vector<std::string> fired_faults;
  std::optional<oracles::CheckResult> check;
};

// Re-executes a finding's trace from a fresh launch and re-evaluates the
// last check. Stops at the first crash.
ReplayResult Replay(sim::Driver& driver, const std::vector<TraceStep>& trace,
                    oracles::OracleMode mode, int settle_retries);

// True when the replay reproduces the finding's recorded verdict.
bool ReplayMatches(const Finding& finding, const ReplayResult& replay);

}  // namespace lossprobe::explorer

#endif  // LOSSPROBE_EXPLORER_EXPLORER_H_
