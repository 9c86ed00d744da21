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

#include "lossprobe/explorer/explorer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "lossprobe/common/error.h"
#include "lossprobe/common/hash.h"

namespace lossprobe::explorer {
namespace {

using model::AbstractState;
using model::Event;
using model::EventKind;
using model::StateId;

constexpr uint64_t kChoiceSalt = 0x63686f6963650001ULL;
// Extra reads made after a failed check to classify the failure.
constexpr int kConfirmReads = 8;

bool IsEnabled(const std::vector<Event>& enabled, const model::EventId& id) {
  return std::any_of(enabled.begin(), enabled.end(),
                     [&](const Event& e) { return e.Id() == id; });
}

AbstractState CurrentState(const sim::Driver& driver) {
  return model::Abstract(driver.CurrentActivity(), driver.EnabledEvents());
}

class Campaign {
 public:
  Campaign(sim::Driver& driver, const ExplorerConfig& config)
      : driver_(driver), config_(config), rng_(MixSeed(config.seed, kChoiceSalt)) {}

  CampaignResult Run();

 private:
  enum class Check { kPass, kFail, kAborted };

  bool BudgetLeft(int64_t needed = 1) const;
  void NoteActivity() { result_.summary.visited_activities.insert(driver_.CurrentActivity()); }
  int64_t NextIndex() { return next_index_++; }

  void Reload();
  void RunSetup();
  // Executes one primitive event. On a crash records the finding, reloads
  // and returns false.
  bool Execute(const Event& e, bool counted, std::string_view origin);
  // Execute plus model bookkeeping.
  bool Transition(const Event& e, std::string_view origin);
  void HandleCrash(const sim::CrashRecord& crash, std::string_view origin);

  void SystematicDlr();
  Check DlrCheck(std::string_view origin);
  std::string RandomText();
  std::string NextFindingId();

  sim::Driver& driver_;
  const ExplorerConfig& config_;
  Rng rng_;
  CampaignResult result_;
  model::GuiModel& model_ = result_.model;
  std::set<StateId> untested_;
  std::vector<TraceStep> session_;
  Observer observer_{driver_};
  oracles::Observation before_;
  oracles::Observation after_;
  oracles::Observation confirm_;
  int64_t next_index_ = 0;
  std::chrono::steady_clock::time_point start_;
};

bool Campaign::BudgetLeft(int64_t needed) const {
  if (config_.max_actions) return result_.summary.actions + needed <= *config_.max_actions;
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  return elapsed.count() < *config_.max_seconds;
}

std::string Campaign::NextFindingId() {
  char buf[16];
  std::snprintf(buf, sizeof buf, "F%04zu", result_.findings.size() + 1);
  return buf;
}

std::string Campaign::RandomText() {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string s = "t";
  for (int i = 0; i < 5; ++i) s += kAlphabet[rng_.Below(sizeof kAlphabet - 1)];
  return s;
}

void Campaign::RunSetup() {
  for (const Event& e : config_.setup_actions) {
    if (e.kind != EventKind::kRotate && !IsEnabled(driver_.EnabledEvents(), e.Id())) {
      throw Error(ErrorCode::kSetupFailed,
                  "setup action " + e.Id().ToString() + " is not enabled in " +
                      driver_.CurrentActivity());
    }
    const sim::StepResult r = e.kind == EventKind::kRotate ? driver_.Rotate() : driver_.Apply(e);
    session_.push_back({NextIndex(), e, Marker::kNone, -1, std::nullopt});
    if (r.crashed) {
      throw Error(ErrorCode::kSetupFailed, "setup action " + e.Id().ToString() + " crashed " +
                                               r.crash.activity);
    }
    ++result_.summary.setup_actions;
  }
  driver_.TakeFiredFaults();
}

void Campaign::Reload() {
  driver_.Load();
  session_.clear();
  RunSetup();
  NoteActivity();
}

void Campaign::HandleCrash(const sim::CrashRecord& crash, std::string_view origin) {
  Finding f;
  f.id = NextFindingId();
  f.kind = FindingKind::kCrash;
  f.activity = crash.activity;
  f.origin = std::string(origin);
  f.action = result_.summary.actions;
  f.fired_faults = driver_.TakeFiredFaults();
  f.trace = session_;
  result_.findings.push_back(std::move(f));
  ++result_.summary.crash_findings;
  ++result_.summary.reloads;
  Reload();
}

bool Campaign::Execute(const Event& e, bool counted, std::string_view origin) {
  if (counted) ++result_.summary.actions;
  const sim::StepResult r = e.kind == EventKind::kRotate ? driver_.Rotate() : driver_.Apply(e);
  session_.push_back({NextIndex(), e, Marker::kNone, -1, std::nullopt});
  if (r.crashed) {
    HandleCrash(r.crash, origin);
    return false;
  }
  NoteActivity();
  return true;
}

bool Campaign::Transition(const Event& e, std::string_view origin) {
  const AbstractState from = CurrentState(driver_);
  if (!Execute(e, /*counted=*/true, origin)) {
    model_.RecordCrash(from, e.Id());
    return false;
  }
  const AbstractState to = CurrentState(driver_);
  const bool fresh = model_.IsNewState(to);
  model_.RecordTransition(from, e.Id(), to);
  const StateId id = model_.Find(to);
  if (fresh) untested_.insert(id);
  session_.back().state = id;
  return true;
}

Campaign::Check Campaign::DlrCheck(std::string_view origin) {
  if (!BudgetLeft(2)) return Check::kAborted;
  driver_.TakeFiredFaults();
  oracles::Observation& before = before_;
  observer_.Observe(before);
  session_.push_back(
      {NextIndex(), std::nullopt, Marker::kCapture, model_.Find(CurrentState(driver_)), {}});
  oracles::Observation& after = after_;
  for (int i = 0; i < 2; ++i) {
    if (!Execute(Event::Rotate(), /*counted=*/true, origin)) return Check::kAborted;
    observer_.Settle(config_.settle_retries, after);
  }
  std::vector<std::string> fired = driver_.TakeFiredFaults();
  const oracles::CheckResult check = oracles::Check(before, after, config_.oracle_mode);

  const AbstractState q = CurrentState(driver_);
  if (model_.IsNewState(q)) untested_.insert(model_.AddState(q));
  const StateId id = model_.Find(q);
  session_.push_back({NextIndex(), std::nullopt, Marker::kCheck, id, check.combined.outcome});
  if (!check.combined.failed()) return Check::kPass;

  Finding f;
  f.id = NextFindingId();
  f.kind = FindingKind::kDataLoss;
  f.activity = driver_.CurrentActivity();
  f.origin = std::string(origin);
  f.action = result_.summary.actions;
  f.state = id;
  f.verdict = check.combined;
  f.snapshot = check.snapshot;
  f.property = check.property;
  // Keep reading while the screen changes. A screen that catches up with
  // `before` was still recreating; one that never settles is time-varying.
  oracles::Observation previous = after;
  bool settled = false;
  for (int read = 0; read < kConfirmReads; ++read) {
    observer_.Observe(confirm_);
    if (!oracles::Check(before, confirm_, config_.oracle_mode).combined.failed()) {
      f.spurious_hint = std::string(kHintSlowRecreation);
      break;
    }
    if (confirm_ == previous) {
      settled = true;
      break;
    }
    std::swap(previous, confirm_);
  }
  if (f.spurious_hint.empty() && !settled) f.spurious_hint = std::string(kHintTimeVarying);
  f.before = before;
  f.after = after;
  f.fired_faults = std::move(fired);
  f.trace = session_;
  result_.findings.push_back(std::move(f));
  ++result_.summary.data_loss_findings;
  return Check::kFail;
}

void Campaign::SystematicDlr() {
  ++result_.summary.systematic_dlr;
  // 1. Fill-in.
  for (const sim::FillTarget& target : driver_.FillTargets()) {
    if (!BudgetLeft()) return;
    const auto current = driver_.FillTargets();
    auto it = std::find_if(current.begin(), current.end(), [&](const sim::FillTarget& t) {
      return t.locator == target.locator && t.checkable == target.checkable;
    });
    if (it == current.end()) continue;
    Event e;
    if (it->checkable) {
      if (it->checked != it->default_checked) continue;
      e = Event::Touch(it->locator);
    } else {
      e = Event::SetText(it->locator, FillValue(it->locator, config_.seed, it->default_text));
    }
    if (!Transition(e, "systematic")) return;
  }
  // 2-4. Save state, double rotation, check.
  if (DlrCheck("systematic") != Check::kPass) return;
  // 5. Scroll down once.
  if (!BudgetLeft()) return;
  std::optional<Event> scroll;
  for (const Event& e : driver_.EnabledEvents()) {
    if (e.kind != EventKind::kScroll) continue;
    if (e.locator.empty() || !scroll) scroll = e;
    if (e.locator.empty()) break;
  }
  if (scroll) Transition(*scroll, "systematic");
}

CampaignResult Campaign::Run() {
  config_.Validate();
  start_ = std::chrono::steady_clock::now();
  result_.summary.total_activities = static_cast<int>(driver_.ActivityNames().size());
  driver_.Load();
  RunSetup();
  NoteActivity();
  untested_.insert(model_.AddInitial(CurrentState(driver_)));

  while (BudgetLeft()) {
    const AbstractState q = CurrentState(driver_);
    if (model_.IsNewState(q)) untested_.insert(model_.AddState(q));
    if (untested_.erase(model_.Find(q))) {
      SystematicDlr();
      continue;
    }
    Event e = ChooseAction(model_, q, driver_.EnabledEvents(), rng_, config_.epsilon);
    if (e.kind == EventKind::kDlrProbabilistic) {
      if (!BudgetLeft(2)) break;
      ++result_.summary.probabilistic_dlr;
      DlrCheck("probabilistic");
      continue;
    }
    if (e.kind == EventKind::kSetText) e.text = RandomText();
    Transition(e, "event");
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  result_.summary.elapsed_seconds = elapsed.count();
  result_.summary.states = static_cast<int>(model_.size());
  result_.summary.transitions = static_cast<int>(model_.TransitionCount());
  return std::move(result_);
}

}  // namespace

void ExplorerConfig::Validate() const {
  if (max_actions.has_value() == max_seconds.has_value()) {
    throw Error(ErrorCode::kBudgetInvalid, "exactly one of max_actions / max_seconds is required");
  }
  if (max_actions && *max_actions <= 0) {
    throw Error(ErrorCode::kBudgetInvalid, "max_actions must be positive");
  }
  if (max_seconds && !(*max_seconds > 0 && std::isfinite(*max_seconds))) {
    throw Error(ErrorCode::kBudgetInvalid, "max_seconds must be positive");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kBudgetInvalid, "epsilon must lie in [0, 1]");
  }
  if (settle_retries < 0) throw Error(ErrorCode::kBudgetInvalid, "settle_retries < 0");
}

std::string_view MarkerName(Marker m) {
  switch (m) {
    case Marker::kNone: return "none";
    case Marker::kCapture: return "capture";
    case Marker::kCheck: return "check";
  }
  return "?";
}

std::optional<Marker> ParseMarker(std::string_view name) {
  if (name == "none") return Marker::kNone;
  if (name == "capture") return Marker::kCapture;
  if (name == "check") return Marker::kCheck;
  return std::nullopt;
}

std::string_view FindingKindName(FindingKind k) {
  return k == FindingKind::kCrash ? "crash" : "data-loss";
}

std::optional<FindingKind> ParseFindingKind(std::string_view name) {
  if (name == "crash") return FindingKind::kCrash;
  if (name == "data-loss") return FindingKind::kDataLoss;
  return std::nullopt;
}

CampaignResult RunCampaign(sim::Driver& driver, const ExplorerConfig& config) {
  return Campaign(driver, config).Run();
}

CampaignResult RunCampaign(std::shared_ptr<const sim::AppSpec> app,
                           const ExplorerConfig& config) {
  sim::SimDriver driver(std::move(app), config.seed);
  return RunCampaign(driver, config);
}

Event ChooseAction(const model::GuiModel& model, const AbstractState& q,
                   const std::vector<Event>& enabled, Rng& rng, double epsilon) {
  std::vector<const Event*> pool;
  const bool random_branch = rng.Uniform01() < epsilon;
  if (!random_branch) {
    const std::set<model::EventId> fresh = model.UnexecutedEvents(q);
    for (const Event& e : enabled) {
      if (fresh.count(e.Id())) pool.push_back(&e);
    }
  }
  if (pool.empty()) {
    for (const Event& e : enabled) pool.push_back(&e);
  }
  const uint64_t pick = rng.Below(pool.size() + 1);
  if (pick == pool.size()) return Event::ProbabilisticDlr();
  return *pool[pick];
}

std::string FillValue(std::string_view locator, uint64_t seed, std::string_view default_text) {
  static constexpr char kHex[] = "0123456789abcdef";
  uint64_t h = MixSeed(seed, Fnv1a64(locator));
  std::string out = "v";
  for (int i = 0; i < 8; ++i) {
    out += kHex[h & 0xf];
    h >>= 4;
  }
  if (out == default_text) out += "x";
  return out;
}

void Observer::Observe(oracles::Observation& out) {
  driver_.RenderInto(frame_);
  if (!out.snapshot) out.snapshot.emplace();
  oracles::CaptureSnapshot(frame_, driver_.CropHeader(), driver_.CropFooter(), *out.snapshot);
  out.properties = oracles::CaptureProperties(driver_.DumpHierarchy());
}

void Observer::Settle(int retries, oracles::Observation& out) {
  Observe(out);
  for (int i = 0; i < retries; ++i) {
    Observe(next_);
    const bool stable = next_ == out;
    std::swap(out, next_);
    if (stable) break;
  }
}

oracles::Observation Observe(sim::Driver& driver) {
  oracles::Observation o;
  Observer(driver).Observe(o);
  return o;
}

oracles::Observation Settle(sim::Driver& driver, int retries) {
  oracles::Observation o;
  Observer(driver).Settle(retries, o);
  return o;
}

ReplayResult Replay(sim::Driver& driver, const std::vector<TraceStep>& trace,
                    oracles::OracleMode mode, int settle_retries) {
  ReplayResult out;
  driver.Load();
  Observer observer(driver);
  oracles::Observation before;
  bool captured = false;
  oracles::Observation settled;
  for (const TraceStep& step : trace) {
    switch (step.marker) {
      case Marker::kCapture:
        driver.TakeFiredFaults();
        observer.Observe(before);
        captured = true;
        continue;
      case Marker::kCheck:
        out.fired_faults = driver.TakeFiredFaults();
        if (captured) out.check = oracles::Check(before, settled, mode);
        continue;
      case Marker::kNone:
        break;
    }
    if (!step.event) continue;
    const Event& e = *step.event;
    sim::StepResult r;
    if (e.kind == EventKind::kRotate) {
      r = driver.Rotate();
    } else {
      if (!IsEnabled(driver.EnabledEvents(), e.Id())) {
        out.diverged = true;
        out.diverged_at = step.index;
        return out;
      }
      r = driver.Apply(e);
    }
    if (r.crashed) {
      out.crashed = true;
      out.crash_activity = r.crash.activity;
      out.fired_faults = driver.TakeFiredFaults();
      return out;
    }
    if (e.kind == EventKind::kRotate) observer.Settle(settle_retries, settled);
  }
  return out;
}

bool ReplayMatches(const Finding& finding, const ReplayResult& replay) {
  if (replay.diverged) return false;
  if (finding.kind == FindingKind::kCrash) {
    return replay.crashed && replay.crash_activity == finding.activity &&
           replay.fired_faults == finding.fired_faults;
  }
  return !replay.crashed && replay.check && replay.check->combined == finding.verdict;
}

}  // namespace lossprobe::explorer
