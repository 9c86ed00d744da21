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

// On-disk report bundles. A run directory holds:
//
//   report.json               config echo, summary, findings with traces
//   metadata.json             wall-clock data (the only non-deterministic file)
//   app.json                  the tested app, as parsed
//   model.tsv / model.dot     the GUI model at the end of the campaign
//   findings/<id>/before.pgm, after.pgm, before.props.json, after.props.json
//
// The layout is described in docs/report-schema.md.

#ifndef LOSSPROBE_CLI_REPORT_H_
#define LOSSPROBE_CLI_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lossprobe/bench/evaluator.h"
#include "lossprobe/explorer/explorer.h"
#include "lossprobe/model/event.h"
#include "lossprobe/sim/app_spec.h"

namespace lossprobe::cli {

inline constexpr int kReportSchemaVersion = 1;

struct RunInfo {
  std::string app_id;
  std::string app_path;  // as given on the command line
  int run = 0;
  explorer::ExplorerConfig config;
};

// Evidence file paths of one finding, relative to the run directory. Empty
// when the finding carries no observation (crashes).
struct EvidencePaths {
  std::string before_snapshot;
  std::string after_snapshot;
  std::string before_properties;
  std::string after_properties;
};

struct RunReport {
  int schema_version = kReportSchemaVersion;
  RunInfo info;
  explorer::CampaignSummary summary;
  std::vector<explorer::Finding> findings;
  std::vector<EvidencePaths> evidence;  // parallel to findings
};

EvidencePaths EvidenceFor(const explorer::Finding& f);

// Writes a complete run directory. Existing files are overwritten.
void WriteRunBundle(const std::filesystem::path& dir, const RunInfo& info,
                    const sim::AppSpec& app, const explorer::CampaignResult& result);

// Reads report.json. With `load_evidence`, before/after observations are
// read back from the evidence files. Throws Error(kParse) / Error(kIo).
RunReport ReadRunReport(const std::filesystem::path& dir, bool load_evidence);

// Canonical JSON text of report.json, as written by WriteRunBundle.
std::string SerializeRunReport(const RunInfo& info, const explorer::CampaignResult& result);
RunReport ParseRunReport(const std::string& text);

std::string SerializeEvent(const model::Event& e);
model::Event ParseEvent(const std::string& json_text);

// Setup scripts: one event per line, "<EVENT-ID> [text]", e.g.
// "SET_TEXT:user alice" or "KEY:BACK". Blank lines and lines starting with
// '#' are ignored. Throws Error(kParse) with the offending line number.
std::vector<model::Event> ParseSetupScript(const std::string& text);

// Aggregate over the runs of one `run` invocation, written as
// <out>/aggregate.json.
std::string SerializeAggregate(const std::vector<RunInfo>& runs,
                               const std::vector<explorer::CampaignResult>& results);

// Loads every <root>/**/report.json as accounting records.
std::vector<bench::RunRecord> CollectRunRecords(const std::filesystem::path& root);

}  // namespace lossprobe::cli

#endif  // LOSSPROBE_CLI_REPORT_H_
