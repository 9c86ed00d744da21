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

#include "lossprobe/cli/commands.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lossprobe/bench/corpus.h"
#include "lossprobe/bench/evaluator.h"
#include "lossprobe/bench/ground_truth.h"
#include "lossprobe/cli/report.h"
#include "lossprobe/common/error.h"
#include "lossprobe/explorer/explorer.h"
#include "lossprobe/sim/app_spec_io.h"
#include "lossprobe/sim/driver.h"

namespace lossprobe::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kOutEnv = "LOSSPROBE_OUT";

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

fs::path OutDir(const std::string& flag) {
  const char* env = std::getenv(kOutEnv);
  if (env && *env) return fs::path(env);
  return fs::path(flag);
}

std::string FiredText(const oracles::CombinedVerdict& v) {
  std::string s = std::string(oracles::OutcomeName(v.outcome)) + " {";
  bool first = true;
  for (auto st : v.fired) {
    if (!first) s += ",";
    s += oracles::StrategyName(st);
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// run

struct RunFlags {
  std::string app;
  std::optional<int64_t> budget_actions;
  std::optional<double> budget_seconds;
  double epsilon = 0.1;
  uint64_t seed = 0;
  std::string oracle = "both";
  int runs = 3;
  std::string setup;
  std::string out = "lossprobe-out";
  std::string app_id;
  int settle_retries = 3;
};

int CmdRun(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.budget_actions.has_value() == flags.budget_seconds.has_value()) {
    err << "run: exactly one of --budget-actions and --budget-seconds is required\n";
    return kExitUsage;
  }
  if (flags.runs < 1) {
    err << "run: --runs must be at least 1\n";
    return kExitUsage;
  }
  const auto mode = oracles::ParseOracleMode(flags.oracle);
  if (!mode) {
    err << "run: --oracle must be snapshot, property or both\n";
    return kExitUsage;
  }
  explorer::ExplorerConfig base;
  base.epsilon = flags.epsilon;
  base.max_actions = flags.budget_actions;
  base.max_seconds = flags.budget_seconds;
  base.seed = flags.seed;
  base.oracle_mode = *mode;
  base.settle_retries = flags.settle_retries;
  try {
    base.Validate();
  } catch (const Error& e) {
    err << "run: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!flags.setup.empty()) base.setup_actions = ParseSetupScript(ReadText(flags.setup));

  auto spec = std::make_shared<const sim::AppSpec>(sim::LoadAppSpecFile(flags.app));
  const fs::path dir = OutDir(flags.out);
  std::vector<RunInfo> infos;
  std::vector<explorer::CampaignResult> results;
  bool any = false;
  for (int i = 0; i < flags.runs; ++i) {
    RunInfo info;
    info.app_id = flags.app_id.empty() ? spec->name : flags.app_id;
    info.app_path = flags.app;
    info.run = i;
    info.config = base;
    info.config.seed = flags.seed + static_cast<uint64_t>(i);
    explorer::CampaignResult result = explorer::RunCampaign(spec, info.config);
    const fs::path run_dir = dir / ("run-" + std::to_string(i));
    WriteRunBundle(run_dir, info, *spec, result);
    const auto& s = result.summary;
    out << "run-" << i << " seed=" << info.config.seed << " actions=" << s.actions
        << " states=" << s.states << " data-loss=" << s.data_loss_findings
        << " crash=" << s.crash_findings << " coverage=" << std::fixed << std::setprecision(1)
        << 100.0 * s.ActivityCoverage() << "%\n";
    out.unsetf(std::ios::floatfield);
    any = any || !result.findings.empty();
    infos.push_back(std::move(info));
    results.push_back(std::move(result));
  }
  WriteText(dir / "aggregate.json", SerializeAggregate(infos, results));
  out << "wrote " << dir.string() << "\n";
  return any ? kExitFindings : kExitOk;
}

// ---------------------------------------------------------------------------
// replay

struct ReplayFlags {
  std::string bundle;
  std::string finding;
  std::optional<uint64_t> seed;
};

int CmdReplay(const ReplayFlags& flags, std::ostream& out, std::ostream& err) {
  const RunReport report = ReadRunReport(flags.bundle, /*load_evidence=*/false);
  const explorer::Finding* finding = nullptr;
  for (const auto& f : report.findings) {
    if (f.id == flags.finding) finding = &f;
  }
  if (!finding) {
    err << "replay: no finding " << flags.finding << " in " << flags.bundle << "\n";
    return kExitUsage;
  }
  auto spec = std::make_shared<const sim::AppSpec>(
      sim::LoadAppSpecFile(fs::path(flags.bundle) / "app.json"));
  sim::SimDriver driver(spec, flags.seed.value_or(report.info.config.seed));
  const explorer::ReplayResult r = explorer::Replay(driver, finding->trace,
                                                    report.info.config.oracle_mode,
                                                    report.info.config.settle_retries);
  if (r.diverged) {
    out << "TRACE_DIVERGED " << finding->id << " at step " << r.diverged_at << "\n";
    return kExitTraceDiverged;
  }
  const bool match = explorer::ReplayMatches(*finding, r);
  out << (match ? "MATCH " : "MISMATCH ") << finding->id;
  if (finding->kind == explorer::FindingKind::kCrash) {
    out << " recorded crash in " << finding->activity << ", replayed "
        << (r.crashed ? "crash in " + r.crash_activity : std::string("no crash")) << "\n";
  } else {
    out << " recorded " << FiredText(finding->verdict) << ", replayed "
        << (r.check ? FiredText(r.check->combined) : std::string("no check")) << "\n";
  }
  return match ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------
// corpus

struct CorpusFlags {
  int count = 10;
  uint64_t seed = 1;
  std::vector<std::string> mix;
  int min_activities = 2;
  int max_activities = 15;
  int min_faults = 1;
  int max_faults = 3;
  double conditional_arming = 0.0;
  bool no_exemplars = false;
  bool no_truth = false;
  std::string out = "corpus";
};

int CmdCorpus(const CorpusFlags& flags, std::ostream& out, std::ostream& err) {
  bench::CorpusOptions o;
  o.count = flags.count;
  o.seed = flags.seed;
  o.min_activities = flags.min_activities;
  o.max_activities = flags.max_activities;
  o.min_faults = flags.min_faults;
  o.max_faults = flags.max_faults;
  o.conditional_arming = flags.conditional_arming;
  o.exemplars = !flags.no_exemplars;
  if (!flags.mix.empty()) {
    o.mix.clear();
    for (const auto& item : flags.mix) {
      const size_t eq = item.find('=');
      const auto pattern = sim::ParseFaultPattern(item.substr(0, eq));
      if (!pattern || eq == std::string::npos) {
        err << "corpus: bad --mix entry '" << item << "' (want PATTERN=WEIGHT)\n";
        return kExitUsage;
      }
      try {
        o.mix[*pattern] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        err << "corpus: bad weight in '" << item << "'\n";
        return kExitUsage;
      }
    }
  }
  bench::Corpus corpus;
  try {
    corpus = bench::GenerateCorpus(o);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInvalidMix && e.code() != ErrorCode::kSpecInvalid) throw;
    err << "corpus: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!flags.no_truth) {
    for (size_t i = 0; i < corpus.apps.size(); ++i) {
      const bench::GroundTruth truth = bench::EvaluateGroundTruth(corpus.apps[i].spec);
      bench::Annotate(corpus.manifest.apps[i], truth);
    }
  }
  const fs::path dir = OutDir(flags.out);
  bench::WriteCorpus(corpus, dir);
  int faults = 0;
  for (const auto& a : corpus.manifest.apps) faults += static_cast<int>(a.faults.size());
  out << "wrote " << corpus.apps.size() << " apps with " << faults << " faults to "
      << dir.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalFlags {
  std::string manifest;
  std::string reports;
  int runs = 3;
  std::string out;
};

int CmdEval(const EvalFlags& flags, std::ostream& out, std::ostream&) {
  const bench::CorpusManifest manifest = bench::ParseManifest(ReadText(flags.manifest));
  const std::vector<bench::RunRecord> records = CollectRunRecords(flags.reports);
  const bench::EvaluationResult result = bench::EvaluateCampaigns(manifest, records, flags.runs);
  const std::string table = bench::FormatTable(result);
  out << table;
  const char* env = std::getenv(kOutEnv);
  if (!flags.out.empty() || (env && *env)) {
    const fs::path dir = OutDir(flags.out);
    fs::create_directories(dir);
    WriteText(dir / "evaluation.json", bench::SerializeEvaluation(result));
    WriteText(dir / "table.txt", table);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// truth

struct TruthFlags {
  std::string app;
  std::string manifest;
  int64_t max_nodes = 200000;
};

int CmdTruth(const TruthFlags& flags, std::ostream& out, std::ostream& err) {
  bench::GroundTruthOptions options;
  options.max_nodes = flags.max_nodes;
  if (!flags.app.empty() == !flags.manifest.empty()) {
    err << "truth: give exactly one of --app and --manifest\n";
    return kExitUsage;
  }
  if (!flags.app.empty()) {
    const bench::GroundTruth t = bench::EvaluateGroundTruth(sim::LoadAppSpecFile(flags.app), options);
    out << "states " << t.abstract_states.size() << " nodes " << t.nodes << " checks " << t.checks
        << "\n";
    for (const auto& [id, label] : t.labels) {
      out << id << " " << bench::DetectabilityName(label) << "\n";
    }
    for (const auto& [activity, d] : t.activity_distance) {
      out << "distance " << activity << " " << d << "\n";
    }
    return kExitOk;
  }
  const fs::path path(flags.manifest);
  bench::CorpusManifest manifest = bench::ParseManifest(ReadText(path));
  for (auto& entry : manifest.apps) {
    const sim::AppSpec spec = sim::LoadAppSpecFile(path.parent_path() / entry.spec_path);
    bench::Annotate(entry, bench::EvaluateGroundTruth(spec, options));
  }
  WriteText(path, bench::SerializeManifest(manifest));
  out << "annotated " << manifest.apps.size() << " apps in " << path.string() << "\n";
  return kExitOk;
}

int ExitFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kSetupFailed:
      return kExitSetupFailed;
    case ErrorCode::kManifestMismatch:
      return kExitManifestMismatch;
    case ErrorCode::kTraceDiverged:
      return kExitTraceDiverged;
    case ErrorCode::kBudgetInvalid:
    case ErrorCode::kInvalidMix:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data-loss test generator for lifecycle-driven GUI apps", "lossprobe"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LOSSPROBE_VERSION_STRING);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "Explore an app and report data-loss failures");
  run_cmd->add_option("--app", run.app, "App spec (JSON)")->required()->check(CLI::ExistingFile);
  auto* ba = run_cmd->add_option("--budget-actions", run.budget_actions, "Action budget per run");
  auto* bs = run_cmd->add_option("--budget-seconds", run.budget_seconds,
                                 "Time budget per run (not deterministic)");
  ba->excludes(bs);
  run_cmd->add_option("--epsilon", run.epsilon, "Random-choice probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Seed of the first run")->capture_default_str();
  run_cmd->add_option("--oracle", run.oracle, "snapshot, property or both")
      ->check(CLI::IsMember({"snapshot", "property", "both"}))
      ->capture_default_str();
  run_cmd->add_option("--runs", run.runs, "Runs with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--setup", run.setup, "Setup event script")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "Output directory (LOSSPROBE_OUT overrides)")
      ->capture_default_str();
  run_cmd->add_option("--app-id", run.app_id, "Id recorded in reports (default: app name)");
  run_cmd->add_option("--settle-retries", run.settle_retries, "Extra reads while settling")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  ReplayFlags replay;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-execute a finding's trace");
  replay_cmd->add_option("bundle", replay.bundle, "Run directory")->required()->check(
      CLI::ExistingDirectory);
  replay_cmd->add_option("finding", replay.finding, "Finding id, e.g. F0001")->required();
  replay_cmd->add_option("--seed", replay.seed, "Driver seed (default: the run's seed)");

  CorpusFlags corpus;
  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Generate a synthetic benchmark corpus");
  corpus_cmd->add_option("--count", corpus.count, "Number of apps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  corpus_cmd->add_option("--seed", corpus.seed, "Generator seed")->capture_default_str();
  corpus_cmd->add_option("--mix", corpus.mix, "Fault weights, PATTERN=WEIGHT (repeatable)");
  corpus_cmd->add_option("--min-activities", corpus.min_activities)->capture_default_str();
  corpus_cmd->add_option("--max-activities", corpus.max_activities)->capture_default_str();
  corpus_cmd->add_option("--min-faults", corpus.min_faults)->capture_default_str();
  corpus_cmd->add_option("--max-faults", corpus.max_faults)->capture_default_str();
  corpus_cmd->add_option("--conditional-arming", corpus.conditional_arming,
                         "Share of faults armed by a local toggle")
      ->check(CLI::Range(0.0, 1.0));
  corpus_cmd->add_flag("--no-exemplars", corpus.no_exemplars, "Skip the two exemplar faults");
  corpus_cmd->add_flag("--no-truth", corpus.no_truth, "Leave detectable_by unset");
  corpus_cmd->add_option("--out", corpus.out, "Output directory")->capture_default_str();

  EvalFlags eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score run reports against a manifest");
  eval_cmd->add_option("--manifest", eval.manifest)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--reports", eval.reports, "Directory searched for report.json files")
      ->required();
  eval_cmd->add_option("--runs", eval.runs, "Runs expected per app")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Write evaluation.json and table.txt here");

  TruthFlags truth;
  CLI::App* truth_cmd = app.add_subcommand("truth", "Brute-force detectability labels");
  truth_cmd->add_option("--app", truth.app)->check(CLI::ExistingFile);
  truth_cmd->add_option("--manifest", truth.manifest, "Annotate a manifest in place")
      ->check(CLI::ExistingFile);
  truth_cmd->add_option("--max-nodes", truth.max_nodes)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return CmdRun(run, out, err);
    if (replay_cmd->parsed()) return CmdReplay(replay, out, err);
    if (corpus_cmd->parsed()) return CmdCorpus(corpus, out, err);
    if (eval_cmd->parsed()) return CmdEval(eval, out, err);
    if (truth_cmd->parsed()) return CmdTruth(truth, out, err);
  } catch (const Error& e) {
    err << "lossprobe: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    err << "lossprobe: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace lossprobe::cli
