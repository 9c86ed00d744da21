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

#ifndef LOSSPROBE_BENCH_EVALUATOR_H_
#define LOSSPROBE_BENCH_EVALUATOR_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lossprobe/bench/corpus.h"
#include "lossprobe/explorer/explorer.h"
#include "lossprobe/oracles/oracles.h"

namespace lossprobe::bench {

// The parts of a finding the accounting needs.
struct FindingRecord {
  std::string id;
  explorer::FindingKind kind = explorer::FindingKind::kDataLoss;
  std::string activity;
  std::set<oracles::Strategy> fired;
  std::vector<std::string> fired_faults;
  std::string spurious_hint;
};

struct RunRecord {
  std::string app_id;
  int run = 0;
  uint64_t seed = 0;
  std::vector<FindingRecord> findings;
  std::set<std::string> visited_activities;
  int total_activities = 0;
};

RunRecord ToRunRecord(const std::string& app_id, int run, uint64_t seed,
                      const explorer::CampaignResult& result);

// A per-run count summarized the way the results table prints it.
struct Tally {
  std::vector<int> per_run;
  double avg = 0;
  int total = 0;  // union over runs (sum for spurious findings)

  // Average rounded to the nearest integer, as printed.
  int RoundedAvg() const;
};

struct AppEvaluation {
  std::string app_id;
  int activities = 0;
  int existing_faults = 0;
  int existing_activities = 0;  // activities carrying a manifest fault
  Tally faults;                 // manifest faults detected
  std::set<std::string> detected_faults;
  Tally data_loss_activities;
  Tally spurious;
  Tally crash_activities;
  std::vector<double> coverage_per_run;
  double coverage_avg = 0;
  double coverage_total = 0;
};

struct StrategyFractions {
  int count = 0;
  double both = 0;
  double snapshot_only = 0;
  double property_only = 0;
  double slow_recreation = 0;  // share carrying the slow-recreation hint

  // Total shares per strategy (both counted in each).
  double snapshot_total() const { return both + snapshot_only; }
  double property_total() const { return both + property_only; }
};

struct EvaluationResult {
  int runs = 0;
  std::vector<AppEvaluation> apps;
  int existing_faults = 0;
  int detected_faults = 0;  // union over runs, all apps
  StrategyFractions detected_findings;
  StrategyFractions detected_faults_by_strategy;  // per-fault granularity
  StrategyFractions spurious_findings;
};

// Throws Error(kManifestMismatch) when an app lacks exactly `runs` run
// records, a record names an unknown app, or a finding names a fault the
// manifest does not list.
EvaluationResult EvaluateCampaigns(const CorpusManifest& manifest,
                                   const std::vector<RunRecord>& records, int runs);

// Fixed-width text table in the results-table column layout.
std::string FormatTable(const EvaluationResult& result);
std::string SerializeEvaluation(const EvaluationResult& result);

}  // namespace lossprobe::bench

#endif  // LOSSPROBE_BENCH_EVALUATOR_H_
