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

#include "lossprobe/bench/evaluator.h"

#include <cmath>
#include <cstdio>
#include <map>

#include "json.hpp"
#include "lossprobe/common/error.h"

namespace lossprobe::bench {
namespace {

using oracles::Strategy;

[[noreturn]] void Mismatch(const std::string& what) {
  throw Error(ErrorCode::kManifestMismatch, what);
}

Tally MakeTally(std::vector<int> per_run, int total) {
  Tally t;
  t.per_run = std::move(per_run);
  t.total = total;
  double sum = 0;
  for (int v : t.per_run) sum += v;
  t.avg = t.per_run.empty() ? 0 : sum / static_cast<double>(t.per_run.size());
  return t;
}

class FractionCounter {
 public:
  void Add(const std::set<Strategy>& fired, bool slow) {
    ++count_;
    const bool s = fired.count(Strategy::kSnapshot) > 0;
    const bool p = fired.count(Strategy::kProperty) > 0;
    if (s && p) ++both_;
    if (s && !p) ++snapshot_;
    if (p && !s) ++property_;
    if (slow) ++slow_;
  }

  StrategyFractions Get() const {
    StrategyFractions f;
    f.count = count_;
    if (count_ == 0) return f;
    const double n = count_;
    f.both = both_ / n;
    f.snapshot_only = snapshot_ / n;
    f.property_only = property_ / n;
    f.slow_recreation = slow_ / n;
    return f;
  }

 private:
  int count_ = 0, both_ = 0, snapshot_ = 0, property_ = 0, slow_ = 0;
};

nlohmann::json TallyJson(const Tally& t) {
  return {{"per_run", t.per_run}, {"avg", t.avg}, {"total", t.total}};
}

nlohmann::json FractionsJson(const StrategyFractions& f) {
  return {{"count", f.count},
          {"both", f.both},
          {"snapshot_only", f.snapshot_only},
          {"property_only", f.property_only},
          {"snapshot_total", f.snapshot_total()},
          {"property_total", f.property_total()},
          {"slow_recreation", f.slow_recreation}};
}

}  // namespace

int Tally::RoundedAvg() const { return static_cast<int>(std::lround(avg)); }

RunRecord ToRunRecord(const std::string& app_id, int run, uint64_t seed,
                      const explorer::CampaignResult& result) {
  RunRecord r;
  r.app_id = app_id;
  r.run = run;
  r.seed = seed;
  r.visited_activities = result.summary.visited_activities;
  r.total_activities = result.summary.total_activities;
  for (const auto& f : result.findings) {
    r.findings.push_back(
        {f.id, f.kind, f.activity, f.verdict.fired, f.fired_faults, f.spurious_hint});
  }
  return r;
}

EvaluationResult EvaluateCampaigns(const CorpusManifest& manifest,
                                   const std::vector<RunRecord>& records, int runs) {
  if (runs < 1) Mismatch("runs must be positive");
  std::map<std::string, std::vector<const RunRecord*>> by_app;
  for (const auto& r : records) {
    if (!manifest.FindApp(r.app_id)) Mismatch("report for unknown app " + r.app_id);
    by_app[r.app_id].push_back(&r);
  }

  EvaluationResult result;
  result.runs = runs;
  FractionCounter detected_findings, spurious_findings, fault_strategies;
  for (const auto& app : manifest.apps) {
    auto& app_runs = by_app[app.app_id];
    std::vector<const RunRecord*> ordered(static_cast<size_t>(runs), nullptr);
    for (const RunRecord* r : app_runs) {
      if (r->run < 0 || r->run >= runs || ordered[static_cast<size_t>(r->run)]) {
        Mismatch(app.app_id + ": unexpected or duplicate run " + std::to_string(r->run));
      }
      ordered[static_cast<size_t>(r->run)] = r;
    }
    for (int i = 0; i < runs; ++i) {
      if (!ordered[static_cast<size_t>(i)]) {
        Mismatch(app.app_id + ": missing run " + std::to_string(i));
      }
    }
    std::map<std::string, const ManifestFault*> faults;
    std::set<std::string> fault_activities;
    for (const auto& f : app.faults) {
      faults[f.fault_id] = &f;
      fault_activities.insert(f.activity);
    }

    AppEvaluation ev;
    ev.app_id = app.app_id;
    ev.activities = app.activities;
    ev.existing_faults = static_cast<int>(app.faults.size());
    ev.existing_activities = static_cast<int>(fault_activities.size());
    std::vector<int> fault_counts, loss_counts, spurious_counts, crash_counts;
    std::set<std::string> loss_union, crash_union, visited_union;
    std::map<std::string, std::set<Strategy>> strategies_by_fault;
    int spurious_total = 0;
    for (const RunRecord* r : ordered) {
      std::set<std::string> detected, loss, crashes;
      int spurious = 0;
      for (const auto& f : r->findings) {
        for (const auto& id : f.fired_faults) {
          if (!faults.count(id)) Mismatch(app.app_id + ": finding names unknown fault " + id);
        }
        if (f.kind == explorer::FindingKind::kCrash) {
          crashes.insert(f.activity);
          if (!f.fired_faults.empty()) detected.insert(f.fired_faults.back());
          continue;
        }
        if (f.fired_faults.empty()) {
          ++spurious;
          spurious_findings.Add(f.fired, f.spurious_hint == explorer::kHintSlowRecreation);
          continue;
        }
        detected_findings.Add(f.fired, false);
        loss.insert(f.activity);
        for (const auto& id : f.fired_faults) {
          detected.insert(id);
          strategies_by_fault[id].insert(f.fired.begin(), f.fired.end());
        }
      }
      fault_counts.push_back(static_cast<int>(detected.size()));
      loss_counts.push_back(static_cast<int>(loss.size()));
      spurious_counts.push_back(spurious);
      crash_counts.push_back(static_cast<int>(crashes.size()));
      spurious_total += spurious;
      ev.detected_faults.insert(detected.begin(), detected.end());
      loss_union.insert(loss.begin(), loss.end());
      crash_union.insert(crashes.begin(), crashes.end());
      visited_union.insert(r->visited_activities.begin(), r->visited_activities.end());
      ev.coverage_per_run.push_back(
          app.activities == 0
              ? 0.0
              : static_cast<double>(r->visited_activities.size()) / app.activities);
    }
    for (const auto& [id, s] : strategies_by_fault) fault_strategies.Add(s, false);
    ev.faults = MakeTally(fault_counts, static_cast<int>(ev.detected_faults.size()));
    ev.data_loss_activities = MakeTally(loss_counts, static_cast<int>(loss_union.size()));
    ev.spurious = MakeTally(spurious_counts, spurious_total);
    ev.crash_activities = MakeTally(crash_counts, static_cast<int>(crash_union.size()));
    double cov = 0;
    for (double c : ev.coverage_per_run) cov += c;
    ev.coverage_avg = cov / runs;
    ev.coverage_total =
        app.activities == 0 ? 0.0 : static_cast<double>(visited_union.size()) / app.activities;
    result.existing_faults += ev.existing_faults;
    result.detected_faults += static_cast<int>(ev.detected_faults.size());
    result.apps.push_back(std::move(ev));
  }
  result.detected_findings = detected_findings.Get();
  result.spurious_findings = spurious_findings.Get();
  result.detected_faults_by_strategy = fault_strategies.Get();
  return result;
}

std::string FormatTable(const EvaluationResult& result) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %5s  %-18s %-18s %-10s %-10s %-14s\n", "App", "Act.",
                "Data loss faults", "Data loss act.", "Spurious", "Crashes", "Coverage");
  out += line;
  std::snprintf(line, sizeof line, "%-10s %5s  %-18s %-18s %-10s %-10s %-14s\n", "", "",
                "avg (total)/exist.", "avg (total)/exist.", "avg (tot.)", "avg (tot.)",
                "avg (total)");
  out += line;
  auto cell = [](const Tally& t, int existing) {
    char buf[64];
    if (existing >= 0) {
      std::snprintf(buf, sizeof buf, "%d (%d)/%d", t.RoundedAvg(), t.total, existing);
    } else {
      std::snprintf(buf, sizeof buf, "%d (%d)", t.RoundedAvg(), t.total);
    }
    return std::string(buf);
  };
  for (const auto& a : result.apps) {
    char cov[32];
    std::snprintf(cov, sizeof cov, "%.0f%% (%.0f%%)", 100 * a.coverage_avg,
                  100 * a.coverage_total);
    std::snprintf(line, sizeof line, "%-10s %5d  %-18s %-18s %-10s %-10s %-14s\n",
                  a.app_id.c_str(), a.activities, cell(a.faults, a.existing_faults).c_str(),
                  cell(a.data_loss_activities, a.existing_activities).c_str(),
                  cell(a.spurious, -1).c_str(), cell(a.crash_activities, -1).c_str(), cov);
    out += line;
  }
  std::snprintf(line, sizeof line, "\nDetected %d of %d faults (union over %d runs).\n",
                result.detected_faults, result.existing_faults, result.runs);
  out += line;
  const auto& d = result.detected_findings;
  std::snprintf(line, sizeof line,
                "Detected findings: %d; both %.1f%%, snapshot only %.1f%%, property only %.1f%%\n",
                d.count, 100 * d.both, 100 * d.snapshot_only, 100 * d.property_only);
  out += line;
  const auto& s = result.spurious_findings;
  std::snprintf(line, sizeof line,
                "Spurious findings: %d; both %.1f%%, snapshot only %.1f%%, property only %.1f%%, "
                "slow recreation %.1f%%\n",
                s.count, 100 * s.both, 100 * s.snapshot_only, 100 * s.property_only,
                100 * s.slow_recreation);
  out += line;
  return out;
}

std::string SerializeEvaluation(const EvaluationResult& result) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["runs"] = result.runs;
  j["existing_faults"] = result.existing_faults;
  j["detected_faults"] = result.detected_faults;
  j["detected_findings"] = FractionsJson(result.detected_findings);
  j["detected_faults_by_strategy"] = FractionsJson(result.detected_faults_by_strategy);
  j["spurious_findings"] = FractionsJson(result.spurious_findings);
  j["apps"] = nlohmann::json::array();
  for (const auto& a : result.apps) {
    nlohmann::json ja;
    ja["app_id"] = a.app_id;
    ja["activities"] = a.activities;
    ja["existing_faults"] = a.existing_faults;
    ja["existing_activities"] = a.existing_activities;
    ja["faults"] = TallyJson(a.faults);
    ja["detected_fault_ids"] = a.detected_faults;
    ja["data_loss_activities"] = TallyJson(a.data_loss_activities);
    ja["spurious"] = TallyJson(a.spurious);
    ja["crash_activities"] = TallyJson(a.crash_activities);
    ja["coverage"] = {{"per_run", a.coverage_per_run},
                      {"avg", a.coverage_avg},
                      {"total", a.coverage_total}};
    j["apps"].push_back(ja);
  }
  return j.dump(2) + "\n";
}

}  // namespace lossprobe::bench
