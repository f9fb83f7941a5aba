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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lion/corpus.h"
#include "lion/text_norm.h"

namespace lion {

enum class Metric { kWer, kCer };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);
// CER for Mandarin, WER otherwise.
Metric default_metric(Language language);

struct EditOps {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_len = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  EditOps& operator+=(const EditOps& o);

  friend bool operator==(const EditOps&, const EditOps&) = default;
};

// Unit-cost Levenshtein alignment of hyp against ref. The backtrace prefers
// substitution (or match), then deletion, then insertion among optimal moves.
EditOps align(std::span<const std::string> ref, std::span<const std::string> hyp);

struct ScoreRow {
  std::string model;
  std::string benchmark;
  Language language = Language::kEnglish;
  Metric metric = Metric::kWer;
  double value = 0.0;  // percent; may exceed 100

  friend bool operator==(const ScoreRow&, const ScoreRow&) = default;
};

struct Score {
  Metric metric;
  EditOps ops;
  double value;  // 100 * errors / ref_len
};

std::vector<std::string> tokenize(std::string_view normalized, Metric metric);

// Normalizes both sides, tokenizes per metric and aligns. Throws
// PreconditionError when the normalized reference has no tokens.
Score score(std::string_view ref_text, std::string_view hyp_text, Language language,
            const NormProfile& profile = {}, std::optional<Metric> metric_override = {});

struct UtteranceScore {
  std::string id;
  Metric metric;
  EditOps ops;
  double value;
};

struct BenchmarkScore {
  std::vector<UtteranceScore> utterances;  // sorted by id
  EditOps totals;
  ScoreRow row;  // value = 100 * total errors / total reference tokens
};

// Scores every reference utterance against `hypotheses` (id -> text). Ids
// missing from `hypotheses` score as empty hypotheses. Utterances whose
// normalized reference is empty are skipped and reported in `skipped`.
BenchmarkScore score_benchmark(std::span<const Utterance> references,
                               const std::map<std::string, std::string>& hypotheses,
                               std::string model, std::string benchmark, Language language,
                               const NormProfile& profile = {},
                               std::optional<Metric> metric_override = {},
                               std::vector<std::string>* skipped = nullptr);

// Loads `{"id":..., "text":...}` JSON lines.
std::map<std::string, std::string> load_hypotheses(const std::filesystem::path& path);

std::string render_utterance_csv(const BenchmarkScore& score);

struct AggregateReport {
  std::vector<ScoreRow> rows;      // included rows, input order
  std::vector<ScoreRow> excluded;  // value > threshold
  std::optional<double> exclusion_threshold;
  double average = 0.0;
};

// Mean over rows with value <= threshold (all rows without a threshold).
// Throws PreconditionError on empty input or when every row is excluded.
AggregateReport aggregate(std::span<const ScoreRow> rows,
                          std::optional<double> threshold = std::nullopt);

// CSV with header model,benchmark,language,metric,value.
std::string score_rows_csv(std::span<const ScoreRow> rows, bool header = true);
std::vector<ScoreRow> parse_score_rows_csv(std::string_view content, const std::string& source);
std::vector<ScoreRow> load_score_rows(const std::filesystem::path& path);

struct ModelSummary {
  std::string model;
  AggregateReport report;
};

// Groups rows by model (first-appearance order) and aggregates each.
std::vector<ModelSummary> aggregate_by_model(std::span<const ScoreRow> rows,
                                             std::optional<double> threshold);

// Model x benchmark table with an Avg column; excluded cells print as "-".
// Benchmarks are columns in language order, then first appearance.
std::string render_aggregate_markdown(std::span<const ModelSummary> summaries);
std::string render_aggregate_csv(std::span<const ModelSummary> summaries);

}  // namespace lion
