// Copyright 2026 The Lion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lion/balancer.h"
#include "lion/config.h"
#include "lion/corpus.h"
#include "lion/cost.h"
#include "lion/error.h"
#include "lion/harness.h"
#include "lion/numeric.h"
#include "lion/scoring.h"
#include "lion/text_norm.h"

namespace lion::cli {
namespace {

// Raised for bad flag combinations that CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(source + ": invalid seed '" + text + "'");
  }
}

Language parse_language_flag(const std::string& text) {
  auto lang = parse_language(text);
  if (!lang) throw UsageError("unknown language '" + text + "'");
  return *lang;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << body;
}

struct StatsArgs {
  std::string config;
  bool no_filter = false;
  std::optional<double> max_duration;
  bool markdown = false;
};

int run_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  auto cfg = load_tool_config(a.config);
  auto loaded = load_corpus(cfg);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  CorpusSpec corpus = std::move(loaded.corpus);
  if (!a.no_filter) {
    auto filtered = filter_by_duration(corpus, a.max_duration.value_or(cfg.max_duration_s));
    err << "filtered " << filtered.dropped << " utterances longer than "
        << a.max_duration.value_or(cfg.max_duration_s) << " s\n";
    corpus = std::move(filtered.corpus);
  }
  auto table = compute_stats(corpus);
  out << (a.markdown ? render_stats_markdown(table) : render_stats_csv(table));
  return kExitOk;
}

struct FilterArgs {
  std::string manifest;
  double max_duration = 30.0;
  std::string out;
};

int run_filter(const FilterArgs& a, std::ostream&, std::ostream& err) {
  auto loaded = load_manifest(a.manifest);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  auto filtered = filter_by_duration(loaded.corpus, a.max_duration);
  save_manifest(filtered.corpus, a.out);
  err << "kept " << filtered.corpus.size() << ", dropped " << filtered.dropped << '\n';
  return kExitOk;
}

struct NormalizeArgs {
  std::string profile = "default";
  std::vector<std::string> text;
};

int run_normalize(const NormalizeArgs& a, std::istream& in, std::ostream& out) {
  auto profile = NormProfile::by_name(a.profile);
  if (!a.text.empty()) {
    for (const auto& t : a.text) out << normalize(t, profile) << '\n';
    return kExitOk;
  }
  std::string line;
  while (std::getline(in, line)) out << normalize(line, profile) << '\n';
  return kExitOk;
}

struct BalanceArgs {
  std::string config;
  std::optional<std::string> seed;
  std::string out;
  bool stratified = false;
};

int run_balance(const BalanceArgs& a, std::ostream& out, std::ostream& err) {
  auto cfg = load_tool_config(a.config);
  std::uint64_t seed;
  if (a.seed) {
    seed = parse_seed(*a.seed, "--seed");
  } else if (const char* env = std::getenv("LION_SEED"); env && *env) {
    seed = parse_seed(env, "LION_SEED");
  } else if (cfg.seed) {
    seed = *cfg.seed;
  } else {
    throw UsageError("no seed: pass --seed, set LION_SEED, or add \"seed\" to the config");
  }
  auto loaded = load_corpus(cfg);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  auto filtered = filter_by_duration(loaded.corpus, cfg.max_duration_s);
  auto bc = balance(filtered.corpus, seed, BalanceOptions{a.stratified});
  export_balanced(bc, filtered.corpus, a.out);
  out << plan_to_json(bc).dump(2) << '\n';
  err << "wrote " << bc.size() << " utterances to " << (std::filesystem::path(a.out) / "balanced.jsonl").string()
      << '\n';
  return kExitOk;
}

struct ScoreArgs {
  std::string ref;
  std::string hyp;
  std::string run;
  std::string language;
  std::string metric;
  std::string model = "model";
  std::string benchmark;
  std::string profile = "default";
  std::string config;
  std::string rows_out;
};

int run_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  if (a.hyp.empty() == a.run.empty()) throw UsageError("score needs exactly one of --hyp or --run");
  NormProfile profile = a.config.empty() ? NormProfile::by_name(a.profile)
                                         : load_tool_config(a.config).normalization;
  auto refs = load_utterance_list(a.ref);
  if (refs.empty()) throw PreconditionError("reference manifest is empty");

  Language language;
  if (!a.language.empty()) {
    language = parse_language_flag(a.language);
  } else {
    language = refs.front().language;
    for (const auto& u : refs) {
      if (u.language != language) {
        throw UsageError("reference manifest mixes languages; pass --language");
      }
    }
  }
  std::optional<Metric> metric;
  if (!a.metric.empty()) {
    metric = parse_metric(a.metric);
    if (!metric) throw UsageError("unknown metric '" + a.metric + "'");
  }

  std::map<std::string, std::string> hyps;
  std::string model = a.model;
  std::string benchmark = a.benchmark;
  if (!a.run.empty()) {
    auto run = load_run(a.run);
    hyps = run.hypothesis_map();
    if (model == "model") model = run.model_label;
    if (benchmark.empty()) benchmark = run.benchmark;
  } else {
    hyps = load_hypotheses(a.hyp);
  }
  if (benchmark.empty()) benchmark = std::filesystem::path(a.ref).stem().string();

  std::vector<std::string> skipped;
  auto result = score_benchmark(refs, hyps, model, benchmark, language, profile, metric, &skipped);
  for (const auto& id : skipped) err << "warning: skipped " << id << " (empty reference)\n";
  out << render_utterance_csv(result);
  err << result.row.model << ' ' << result.row.benchmark << ' ' << to_string(result.row.metric)
      << ' ' << format_fixed(result.row.value, 2) << '\n';

  if (!a.rows_out.empty()) {
    const bool fresh = !std::filesystem::exists(a.rows_out) || std::filesystem::file_size(a.rows_out) == 0;
    std::ofstream rows(a.rows_out, std::ios::binary | std::ios::app);
    if (!rows) throw IoError("cannot write " + a.rows_out);
    rows << score_rows_csv(std::span(&result.row, 1), fresh);
  }
  return kExitOk;
}

struct AggregateArgs {
  std::vector<std::string> rows;
  std::optional<double> threshold;
  std::string config;
  bool markdown = false;
};

int run_aggregate(const AggregateArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<double> threshold = a.threshold;
  if (!threshold && !a.config.empty()) threshold = load_tool_config(a.config).exclusion_threshold;
  std::vector<ScoreRow> rows;
  for (const auto& path : a.rows) {
    auto more = load_score_rows(path);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  auto summaries = aggregate_by_model(rows, threshold);
  for (const auto& s : summaries) {
    for (const auto& x : s.report.excluded) {
      err << "excluded " << s.model << ' ' << x.benchmark << " (" << to_string(x.language)
          << ") = " << format_fixed(x.value, 2) << '\n';
    }
  }
  out << (a.markdown ? render_aggregate_markdown(summaries) : render_aggregate_csv(summaries));
  return kExitOk;
}

struct BenchArgs {
  std::string manifest;
  std::string cmd;
  std::size_t warmup = 3;
  double timeout = 120.0;
  double start_timeout = 30.0;
  std::string out;
  std::string model;
  std::string benchmark;
  bool pipelined = false;
  std::size_t conformance = 0;
};

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.conformance > 0) {
    ConformanceOptions opts;
    opts.requests = a.conformance;
    opts.timeout_s = a.timeout;
    auto report = run_conformance(a.cmd, opts);
    for (const auto& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    return report.passed() ? kExitOk : kExitDomainError;
  }
  if (a.manifest.empty() || a.out.empty()) throw UsageError("bench needs --manifest and --out");
  auto utterances = load_utterance_list(a.manifest);
  HarnessConfig cfg;
  cfg.command = a.cmd;
  cfg.model_label = a.model.empty() ? "model" : a.model;
  cfg.benchmark = a.benchmark.empty() ? std::filesystem::path(a.manifest).stem().string() : a.benchmark;
  cfg.warmup = a.warmup;
  cfg.request_timeout_s = a.timeout;
  cfg.start_timeout_s = a.start_timeout;
  cfg.pipelined = a.pipelined;

  auto run = run_benchmark(utterances, cfg);
  auto path = save_run(run, a.out);
  out << path.string() << '\n';
  err << run.hypotheses.size() << " hypotheses, " << run.errors.size() << " errors";
  if (run.stats) {
    err << ", " << format_fixed(run.stats->mean_s, 4) << " ± " << format_fixed(run.stats->std_s, 4)
        << " s/sample over " << run.stats->n;
  }
  err << '\n';
  if (run.aborted) {
    err << "run aborted: " << run.abort_reason << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> runs;
  std::string out;
  bool markdown = false;
};

int run_report(const ReportArgs& a, std::ostream& out, std::ostream&) {
  std::vector<RunResult> runs;
  for (const auto& p : a.runs) {
    auto more = load_runs(p);
    std::move(more.begin(), more.end(), std::back_inserter(runs));
  }
  auto report = emit_run_report(runs);
  if (!a.out.empty()) write_run_report(report, a.out);
  out << (a.markdown ? report.markdown : report.csv);
  return kExitOk;
}

struct CostArgs {
  TrainingSetup a{"A", "", 1, 0.0, 0.0, 0.0};
  TrainingSetup b{"B", "", 1, 0.0, 0.0, 0.0};
  bool compare = false;
  bool markdown = false;
};

int run_cost(CostArgs& a, std::ostream& out, std::ostream&) {
  if (!a.compare) {
    auto cents = estimate_cost_cents(a.a);
    if (a.markdown) {
      out << render_cost_markdown(std::span(&a.a, 1));
    } else {
      out << "label,gpus,hours,rate,cost\n"
          << a.a.label << ',' << a.a.gpu_count << ',' << a.a.wall_hours << ',' << a.a.hourly_rate
          << ',' << format_fixed(static_cast<double>(cents) / 100.0, 2) << '\n';
    }
    return kExitOk;
  }
  std::vector<TrainingSetup> setups = {a.a, a.b};
  out << render_cost_markdown(setups);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multilingual ASR data and evaluation toolkit", "lion"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Per-dataset sample and hour counts by split");
  s->add_option("--config", stats.config, "Corpus config JSON")->required();
  s->add_flag("--no-filter", stats.no_filter, "Skip the max-duration filter");
  s->add_option("--max-duration", stats.max_duration, "Override the config's max_duration_s");
  s->add_flag("--markdown", stats.markdown, "Render a Markdown table instead of CSV");

  FilterArgs filt;
  auto* f = app.add_subcommand("filter", "Drop utterances longer than a duration cutoff");
  f->add_option("--manifest", filt.manifest, "Input JSON-lines manifest")->required();
  f->add_option("--max-duration", filt.max_duration, "Cutoff in seconds (inclusive)")
      ->capture_default_str();
  f->add_option("--out", filt.out, "Output manifest path")->required();

  NormalizeArgs norm;
  auto* n = app.add_subcommand("normalize", "Normalize text (arguments, or stdin lines)");
  n->add_option("--profile", norm.profile, "Normalization profile")->capture_default_str();
  n->add_option("text", norm.text, "Text to normalize");

  BalanceArgs bal;
  auto* b = app.add_subcommand("balance", "Two-stage balanced upsampling of the train split");
  b->add_option("--config", bal.config, "Corpus config JSON")->required();
  b->add_option("--seed", bal.seed, "Master seed (falls back to LION_SEED, then config)");
  b->add_option("--out", bal.out, "Output directory for balanced.jsonl and plan.json")->required();
  b->add_flag("--stratified", bal.stratified, "Stratify the second stage by dataset");

  ScoreArgs sc;
  auto* c = app.add_subcommand("score", "WER/CER of hypotheses against a reference manifest");
  c->add_option("--ref", sc.ref, "Reference manifest")->required();
  c->add_option("--hyp", sc.hyp, "Hypotheses as JSON lines {id, text}");
  c->add_option("--run", sc.run, "Run file written by bench");
  c->add_option("--language", sc.language, "Language (default: from the manifest)");
  c->add_option("--metric", sc.metric, "Force wer or cer");
  c->add_option("--model", sc.model, "Model label for the report row");
  c->add_option("--benchmark", sc.benchmark, "Benchmark name (default: manifest stem)");
  c->add_option("--profile", sc.profile, "Normalization profile")->capture_default_str();
  c->add_option("--config", sc.config, "Take the normalization profile from this config");
  c->add_option("--rows-out", sc.rows_out, "Append the benchmark row to this CSV");

  AggregateArgs agg;
  auto* g = app.add_subcommand("aggregate", "Per-model averages over score rows");
  g->add_option("--rows", agg.rows, "Score row CSV files")->required();
  g->add_option("--threshold", agg.threshold, "Exclude rows above this percent");
  g->add_option("--config", agg.config, "Take exclusion_threshold from this config");
  g->add_flag("--markdown", agg.markdown, "Render a Markdown table instead of CSV");

  BenchArgs bench;
  auto* h = app.add_subcommand("bench", "Drive a transcriber process over a manifest");
  h->add_option("--manifest", bench.manifest, "Benchmark manifest");
  h->add_option("--cmd", bench.cmd, "Transcriber command line")->required();
  h->add_option("--warmup", bench.warmup, "Responses excluded from latency stats")
      ->capture_default_str();
  h->add_option("--timeout", bench.timeout, "Per-request timeout in seconds")->capture_default_str();
  h->add_option("--start-timeout", bench.start_timeout, "Handshake timeout in seconds")
      ->capture_default_str();
  h->add_option("--out", bench.out, "Directory for the run file");
  h->add_option("--model", bench.model, "Model label");
  h->add_option("--benchmark", bench.benchmark, "Benchmark name (default: manifest stem)");
  h->add_flag("--pipelined", bench.pipelined, "Throughput mode; no latency stats");
  h->add_option("--conformance", bench.conformance,
                "Run the protocol conformance suite with this many requests instead");

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Latency table from run files");
  r->add_option("--runs", rep.runs, "Run files or directories")->required();
  r->add_option("--out", rep.out, "Directory for report.md and report.csv");
  r->add_flag("--markdown", rep.markdown, "Print Markdown instead of CSV");

  CostArgs cost;
  auto* k = app.add_subcommand("cost", "GPU-hours training cost estimate");
  k->add_option("--gpus", cost.a.gpu_count, "GPU count")->required();
  k->add_option("--hours", cost.a.wall_hours, "Wall-clock hours")->required();
  k->add_option("--rate", cost.a.hourly_rate, "Price per GPU-hour")->required();
  k->add_option("--label", cost.a.label, "Setup label");
  k->add_option("--hardware", cost.a.hardware, "Hardware description");
  k->add_option("--data-hours", cost.a.data_hours, "Training data hours");
  auto* vs = k->add_option("--vs-gpus", cost.b.gpu_count, "Comparison GPU count");
  k->add_option("--vs-hours", cost.b.wall_hours, "Comparison wall-clock hours")->needs(vs);
  k->add_option("--vs-rate", cost.b.hourly_rate, "Comparison price per GPU-hour")->needs(vs);
  k->add_option("--vs-label", cost.b.label, "Comparison label");
  k->add_option("--vs-hardware", cost.b.hardware, "Comparison hardware description");
  k->add_option("--vs-data-hours", cost.b.data_hours, "Comparison training data hours");
  k->add_flag("--markdown", cost.markdown, "Markdown table for a single setup");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (*s) return run_stats(stats, out, err);
    if (*f) return run_filter(filt, out, err);
    if (*n) return run_normalize(norm, std::cin, out);
    if (*b) return run_balance(bal, out, err);
    if (*c) return run_score(sc, out, err);
    if (*g) return run_aggregate(agg, out, err);
    if (*h) return run_bench(bench, out, err);
    if (*r) return run_report(rep, out, err);
    if (*k) {
      cost.compare = vs->count() > 0;
      return run_cost(cost, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace lion::cli
