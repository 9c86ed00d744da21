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

#include "lossprobe/cli/report.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lossprobe/common/error.h"
#include "lossprobe/oracles/property_tree.h"
#include "lossprobe/sim/app_spec_io.h"
#include "lossprobe/sim/image.h"

namespace lossprobe::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void Bad(const std::string& what) { throw Error(ErrorCode::kParse, what); }

void WriteFile(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << data;
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json EventJson(const model::Event& e) {
  json j;
  j["kind"] = model::EventKindName(e.kind);
  if (!e.locator.empty()) j["locator"] = e.locator;
  if (!e.key.empty()) j["key"] = e.key;
  if (e.kind == model::EventKind::kSetText) j["text"] = e.text;
  return j;
}

model::Event EventFromJson(const json& j) {
  if (!j.is_object()) Bad("event must be an object");
  const auto kind = model::ParseEventKind(j.at("kind").get<std::string>());
  if (!kind) Bad("unknown event kind " + j.at("kind").dump());
  model::Event e;
  e.kind = *kind;
  e.locator = j.value("locator", "");
  e.key = j.value("key", "");
  e.text = j.value("text", "");
  return e;
}

json VerdictJson(const std::optional<oracles::Verdict>& v) {
  if (!v) return nullptr;
  json j;
  j["outcome"] = oracles::OutcomeName(v->outcome);
  j["strategy"] = oracles::StrategyName(v->strategy);
  if (v->strategy == oracles::Strategy::kSnapshot) {
    j["differing"] = v->differing;
    j["total"] = v->total;
  } else {
    j["path"] = v->path;
    j["field"] = v->field;
  }
  return j;
}

oracles::Outcome OutcomeFromJson(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "PASS") return oracles::Outcome::kPass;
  if (s == "FAIL") return oracles::Outcome::kFail;
  Bad("unknown outcome " + s);
}

std::optional<oracles::Verdict> VerdictFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  oracles::Verdict v;
  v.outcome = OutcomeFromJson(j.at("outcome"));
  const auto s = oracles::ParseStrategy(j.at("strategy").get<std::string>());
  if (!s) Bad("unknown strategy");
  v.strategy = *s;
  v.differing = j.value("differing", int64_t{0});
  v.total = j.value("total", int64_t{0});
  v.path = j.value("path", "");
  v.field = j.value("field", "");
  return v;
}

json StepJson(const explorer::TraceStep& s) {
  json j;
  j["index"] = s.index;
  j["event"] = s.event ? EventJson(*s.event) : json(nullptr);
  j["marker"] = explorer::MarkerName(s.marker);
  j["state"] = s.state;
  j["verdict"] = s.verdict ? json(oracles::OutcomeName(*s.verdict)) : json(nullptr);
  return j;
}

explorer::TraceStep StepFromJson(const json& j) {
  explorer::TraceStep s;
  s.index = j.at("index").get<int64_t>();
  if (!j.at("event").is_null()) s.event = EventFromJson(j.at("event"));
  const auto m = explorer::ParseMarker(j.at("marker").get<std::string>());
  if (!m) Bad("unknown trace marker");
  s.marker = *m;
  s.state = j.at("state").get<int>();
  if (!j.at("verdict").is_null()) s.verdict = OutcomeFromJson(j.at("verdict"));
  return s;
}

json ConfigJson(const RunInfo& info) {
  const explorer::ExplorerConfig& c = info.config;
  json j;
  j["app_id"] = info.app_id;
  j["app_path"] = info.app_path;
  j["run"] = info.run;
  j["seed"] = c.seed;
  j["epsilon"] = c.epsilon;
  j["budget_actions"] = c.max_actions ? json(*c.max_actions) : json(nullptr);
  j["budget_seconds"] = c.max_seconds ? json(*c.max_seconds) : json(nullptr);
  j["oracle"] = oracles::OracleModeName(c.oracle_mode);
  j["settle_retries"] = c.settle_retries;
  j["setup"] = json::array();
  for (const auto& e : c.setup_actions) j["setup"].push_back(EventJson(e));
  return j;
}

RunInfo ConfigFromJson(const json& j) {
  RunInfo info;
  info.app_id = j.at("app_id").get<std::string>();
  info.app_path = j.at("app_path").get<std::string>();
  info.run = j.at("run").get<int>();
  explorer::ExplorerConfig& c = info.config;
  c.seed = j.at("seed").get<uint64_t>();
  c.epsilon = j.at("epsilon").get<double>();
  if (!j.at("budget_actions").is_null()) c.max_actions = j.at("budget_actions").get<int64_t>();
  if (!j.at("budget_seconds").is_null()) c.max_seconds = j.at("budget_seconds").get<double>();
  const auto mode = oracles::ParseOracleMode(j.at("oracle").get<std::string>());
  if (!mode) Bad("unknown oracle mode");
  c.oracle_mode = *mode;
  c.settle_retries = j.at("settle_retries").get<int>();
  for (const auto& e : j.at("setup")) c.setup_actions.push_back(EventFromJson(e));
  return info;
}

json SummaryJson(const explorer::CampaignSummary& s) {
  json j;
  j["actions"] = s.actions;
  j["setup_actions"] = s.setup_actions;
  j["reloads"] = s.reloads;
  j["systematic_dlr"] = s.systematic_dlr;
  j["probabilistic_dlr"] = s.probabilistic_dlr;
  j["states"] = s.states;
  j["transitions"] = s.transitions;
  j["data_loss_findings"] = s.data_loss_findings;
  j["crash_findings"] = s.crash_findings;
  j["total_activities"] = s.total_activities;
  j["visited_activities"] = s.visited_activities;
  j["activity_coverage"] = s.ActivityCoverage();
  return j;
}

explorer::CampaignSummary SummaryFromJson(const json& j) {
  explorer::CampaignSummary s;
  s.actions = j.at("actions").get<int64_t>();
  s.setup_actions = j.at("setup_actions").get<int64_t>();
  s.reloads = j.at("reloads").get<int>();
  s.systematic_dlr = j.at("systematic_dlr").get<int>();
  s.probabilistic_dlr = j.at("probabilistic_dlr").get<int>();
  s.states = j.at("states").get<int>();
  s.transitions = j.at("transitions").get<int>();
  s.data_loss_findings = j.at("data_loss_findings").get<int>();
  s.crash_findings = j.at("crash_findings").get<int>();
  s.total_activities = j.at("total_activities").get<int>();
  s.visited_activities = j.at("visited_activities").get<std::set<std::string>>();
  return s;
}

json EvidenceJson(const explorer::Finding& f) {
  const EvidencePaths p = EvidenceFor(f);
  json j;
  auto opt = [](const std::string& s) { return s.empty() ? json(nullptr) : json(s); };
  j["before_snapshot"] = opt(p.before_snapshot);
  j["after_snapshot"] = opt(p.after_snapshot);
  j["before_properties"] = opt(p.before_properties);
  j["after_properties"] = opt(p.after_properties);
  const auto& snap = f.before.snapshot ? f.before.snapshot : f.after.snapshot;
  j["crop_header"] = snap ? snap->crop_header : 0;
  j["crop_footer"] = snap ? snap->crop_footer : 0;
  return j;
}

json FindingJson(const explorer::Finding& f) {
  json j;
  j["id"] = f.id;
  j["kind"] = explorer::FindingKindName(f.kind);
  j["activity"] = f.activity;
  j["origin"] = f.origin;
  j["action"] = f.action;
  j["state"] = f.state;
  j["outcome"] = oracles::OutcomeName(f.verdict.outcome);
  j["fired"] = json::array();
  for (auto s : f.verdict.fired) j["fired"].push_back(oracles::StrategyName(s));
  j["snapshot_verdict"] = VerdictJson(f.snapshot);
  j["property_verdict"] = VerdictJson(f.property);
  j["spurious_hint"] = f.spurious_hint.empty() ? json(nullptr) : json(f.spurious_hint);
  j["fired_faults"] = f.fired_faults;
  j["evidence"] = EvidenceJson(f);
  j["trace"] = json::array();
  for (const auto& s : f.trace) j["trace"].push_back(StepJson(s));
  return j;
}

std::string OptString(const json& j) { return j.is_null() ? std::string() : j.get<std::string>(); }

std::string Timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

EvidencePaths EvidenceFor(const explorer::Finding& f) {
  EvidencePaths p;
  const std::string base = "findings/" + f.id + "/";
  if (f.before.snapshot) p.before_snapshot = base + "before.pgm";
  if (f.after.snapshot) p.after_snapshot = base + "after.pgm";
  if (f.before.properties) p.before_properties = base + "before.props.json";
  if (f.after.properties) p.after_properties = base + "after.props.json";
  return p;
}

std::string SerializeEvent(const model::Event& e) { return EventJson(e).dump(); }

model::Event ParseEvent(const std::string& json_text) {
  try {
    return EventFromJson(json::parse(json_text));
  } catch (const json::exception& e) {
    Bad(std::string("event: ") + e.what());
  }
}

std::string SerializeRunReport(const RunInfo& info, const explorer::CampaignResult& result) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = ConfigJson(info);
  j["summary"] = SummaryJson(result.summary);
  j["findings"] = json::array();
  for (const auto& f : result.findings) j["findings"].push_back(FindingJson(f));
  return j.dump(2) + "\n";
}

RunReport ParseRunReport(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      Bad("unsupported report schema_version " + std::to_string(r.schema_version));
    }
    r.info = ConfigFromJson(j.at("config"));
    r.summary = SummaryFromJson(j.at("summary"));
    for (const auto& jf : j.at("findings")) {
      explorer::Finding f;
      f.id = jf.at("id").get<std::string>();
      const auto kind = explorer::ParseFindingKind(jf.at("kind").get<std::string>());
      if (!kind) Bad("unknown finding kind");
      f.kind = *kind;
      f.activity = jf.at("activity").get<std::string>();
      f.origin = jf.at("origin").get<std::string>();
      f.action = jf.at("action").get<int64_t>();
      f.state = jf.at("state").get<int>();
      f.verdict.outcome = OutcomeFromJson(jf.at("outcome"));
      for (const auto& s : jf.at("fired")) {
        const auto st = oracles::ParseStrategy(s.get<std::string>());
        if (!st) Bad("unknown strategy in fired");
        f.verdict.fired.insert(*st);
      }
      f.snapshot = VerdictFromJson(jf.at("snapshot_verdict"));
      f.property = VerdictFromJson(jf.at("property_verdict"));
      f.spurious_hint = OptString(jf.at("spurious_hint"));
      f.fired_faults = jf.at("fired_faults").get<std::vector<std::string>>();
      for (const auto& s : jf.at("trace")) f.trace.push_back(StepFromJson(s));
      const json& ev = jf.at("evidence");
      r.evidence.push_back({OptString(ev.at("before_snapshot")), OptString(ev.at("after_snapshot")),
                            OptString(ev.at("before_properties")),
                            OptString(ev.at("after_properties"))});
      // Crop rows are needed to rebuild snapshots; stash them on empty ones.
      if (!r.evidence.back().before_snapshot.empty() || !r.evidence.back().after_snapshot.empty()) {
        oracles::Snapshot s;
        s.crop_header = ev.at("crop_header").get<int>();
        s.crop_footer = ev.at("crop_footer").get<int>();
        if (!r.evidence.back().before_snapshot.empty()) f.before.snapshot = s;
        if (!r.evidence.back().after_snapshot.empty()) f.after.snapshot = s;
      }
      r.findings.push_back(std::move(f));
    }
    return r;
  } catch (const json::exception& e) {
    Bad(std::string("report: ") + e.what());
  }
}

void WriteRunBundle(const fs::path& dir, const RunInfo& info, const sim::AppSpec& app,
                    const explorer::CampaignResult& result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  WriteFile(dir / "report.json", SerializeRunReport(info, result));
  WriteFile(dir / "app.json", sim::SerializeAppSpec(app));
  WriteFile(dir / "model.tsv", result.model.ExportGraph());
  WriteFile(dir / "model.dot", result.model.ExportDot());
  for (const auto& f : result.findings) {
    const EvidencePaths p = EvidenceFor(f);
    if (p.before_snapshot.empty() && p.after_snapshot.empty() && p.before_properties.empty() &&
        p.after_properties.empty()) {
      continue;
    }
    fs::create_directories(dir / "findings" / f.id, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create finding directory: " + ec.message());
    if (f.before.snapshot) {
      sim::WritePgm(dir / p.before_snapshot, oracles::SnapshotImage(*f.before.snapshot));
    }
    if (f.after.snapshot) {
      sim::WritePgm(dir / p.after_snapshot, oracles::SnapshotImage(*f.after.snapshot));
    }
    if (f.before.properties) {
      WriteFile(dir / p.before_properties, oracles::SerializePropertyTree(*f.before.properties));
    }
    if (f.after.properties) {
      WriteFile(dir / p.after_properties, oracles::SerializePropertyTree(*f.after.properties));
    }
  }
  json meta;
  meta["written_at"] = Timestamp(std::chrono::system_clock::now());
  meta["elapsed_seconds"] = result.summary.elapsed_seconds;
  meta["tool_version"] = LOSSPROBE_VERSION_STRING;
  WriteFile(dir / "metadata.json", meta.dump(2) + "\n");
}

RunReport ReadRunReport(const fs::path& dir, bool load_evidence) {
  RunReport r = ParseRunReport(ReadFile(dir / "report.json"));
  if (!load_evidence) return r;
  for (size_t i = 0; i < r.findings.size(); ++i) {
    explorer::Finding& f = r.findings[i];
    const EvidencePaths& p = r.evidence[i];
    auto load_snapshot = [&](const std::string& rel, std::optional<oracles::Snapshot>& slot) {
      if (rel.empty()) return;
      const sim::GrayImage img = sim::ReadPgm(dir / rel);
      slot->width = img.width;
      slot->height = img.height;
      slot->pixels = img.pixels;
    };
    load_snapshot(p.before_snapshot, f.before.snapshot);
    load_snapshot(p.after_snapshot, f.after.snapshot);
    if (!p.before_properties.empty()) {
      f.before.properties = oracles::ParsePropertyTree(ReadFile(dir / p.before_properties));
    }
    if (!p.after_properties.empty()) {
      f.after.properties = oracles::ParsePropertyTree(ReadFile(dir / p.after_properties));
    }
  }
  return r;
}

std::vector<model::Event> ParseSetupScript(const std::string& text) {
  std::vector<model::Event> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    const size_t space = line.find(' ');
    const std::string id_text = line.substr(0, space);
    const auto id = model::EventId::Parse(id_text);
    if (!id || id->kind == model::EventKind::kDlrProbabilistic) {
      throw Error(ErrorCode::kParse,
                  "setup line " + std::to_string(number) + ": bad event '" + id_text + "'");
    }
    std::string payload = space == std::string::npos ? std::string() : line.substr(space + 1);
    if (id->kind != model::EventKind::kSetText && !payload.empty()) {
      throw Error(ErrorCode::kParse,
                  "setup line " + std::to_string(number) + ": only SET_TEXT takes text");
    }
    out.push_back(model::Event::FromId(*id, std::move(payload)));
  }
  return out;
}

std::string SerializeAggregate(const std::vector<RunInfo>& runs,
                               const std::vector<explorer::CampaignResult>& results) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["app_id"] = runs.empty() ? std::string() : runs.front().app_id;
  j["runs"] = json::array();
  std::set<std::string> visited;
  int total_activities = 0;
  int data_loss = 0;
  int crashes = 0;
  double coverage_sum = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    const explorer::CampaignSummary& s = results[i].summary;
    json jr;
    jr["run"] = runs[i].run;
    jr["seed"] = runs[i].config.seed;
    jr["dir"] = "run-" + std::to_string(runs[i].run);
    jr["data_loss_findings"] = s.data_loss_findings;
    jr["crash_findings"] = s.crash_findings;
    jr["activity_coverage"] = s.ActivityCoverage();
    j["runs"].push_back(jr);
    visited.insert(s.visited_activities.begin(), s.visited_activities.end());
    total_activities = s.total_activities;
    data_loss += s.data_loss_findings;
    crashes += s.crash_findings;
    coverage_sum += s.ActivityCoverage();
  }
  j["data_loss_findings"] = data_loss;
  j["crash_findings"] = crashes;
  j["activity_coverage_avg"] = runs.empty() ? 0.0 : coverage_sum / static_cast<double>(runs.size());
  j["activity_coverage_total"] =
      total_activities == 0 ? 0.0
                            : static_cast<double>(visited.size()) / total_activities;
  return j.dump(2) + "\n";
}

std::vector<bench::RunRecord> CollectRunRecords(const fs::path& root) {
  std::vector<bench::RunRecord> out;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(ErrorCode::kIo, "no such directory " + root.string());
  std::vector<fs::path> dirs;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
    if (ec) throw Error(ErrorCode::kIo, "cannot scan " + root.string() + ": " + ec.message());
    if (it->is_regular_file() && it->path().filename() == "report.json") {
      dirs.push_back(it->path().parent_path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    const RunReport r = ReadRunReport(d, false);
    bench::RunRecord rec;
    rec.app_id = r.info.app_id;
    rec.run = r.info.run;
    rec.seed = r.info.config.seed;
    rec.visited_activities = r.summary.visited_activities;
    rec.total_activities = r.summary.total_activities;
    for (const auto& f : r.findings) {
      rec.findings.push_back(
          {f.id, f.kind, f.activity, f.verdict.fired, f.fired_faults, f.spurious_hint});
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace lossprobe::cli
