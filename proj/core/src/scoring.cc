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

#include "lion/scoring.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lion/error.h"
#include "lion/numeric.h"

namespace lion {
namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line, const std::string& source,
                                        std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::string_view to_string(Metric metric) { return metric == Metric::kCer ? "cer" : "wer"; }

std::optional<Metric> parse_metric(std::string_view text) {
  if (text == "wer") return Metric::kWer;
  if (text == "cer") return Metric::kCer;
  return std::nullopt;
}

Metric default_metric(Language language) {
  return language == Language::kMandarin ? Metric::kCer : Metric::kWer;
}

EditOps& EditOps::operator+=(const EditOps& o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  ref_len += o.ref_len;
  return *this;
}

EditOps align(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t width = m + 1;
  // cost[i * width + j]: distance between ref[0, i) and hyp[0, j).
  std::vector<std::uint32_t> cost((n + 1) * width);
  for (std::size_t j = 0; j <= m; ++j) cost[j] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cost[i * width] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint32_t diag = cost[(i - 1) * width + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      std::uint32_t del = cost[(i - 1) * width + j] + 1;
      std::uint32_t ins = cost[i * width + j - 1] + 1;
      cost[i * width + j] = std::min({diag, del, ins});
    }
  }

  EditOps ops;
  ops.ref_len = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = cost[i * width + j];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (here == cost[(i - 1) * width + j - 1] + (same ? 0 : 1)) {
        if (!same) ++ops.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && here == cost[(i - 1) * width + j] + 1) {
      ++ops.deletions;
      --i;
    } else {
      ++ops.insertions;
      --j;
    }
  }
  return ops;
}

std::vector<std::string> tokenize(std::string_view normalized, Metric metric) {
  return metric == Metric::kCer ? tokenize_chars(normalized) : tokenize_words(normalized);
}

Score score(std::string_view ref_text, std::string_view hyp_text, Language language,
            const NormProfile& profile, std::optional<Metric> metric_override) {
  const Metric metric = metric_override.value_or(default_metric(language));
  auto ref = tokenize(normalize(ref_text, profile), metric);
  if (ref.empty()) throw PreconditionError("reference is empty after normalization");
  auto hyp = tokenize(normalize(hyp_text, profile), metric);
  EditOps ops = align(ref, hyp);
  return {metric, ops, 100.0 * static_cast<double>(ops.errors()) / static_cast<double>(ops.ref_len)};
}

BenchmarkScore score_benchmark(std::span<const Utterance> references,
                               const std::map<std::string, std::string>& hypotheses,
                               std::string model, std::string benchmark, Language language,
                               const NormProfile& profile, std::optional<Metric> metric_override,
                               std::vector<std::string>* skipped) {
  const Metric metric = metric_override.value_or(default_metric(language));
  BenchmarkScore result;
  for (const auto& ref : references) {
    auto it = hypotheses.find(ref.id);
    std::string_view hyp = it == hypotheses.end() ? std::string_view() : it->second;
    auto ref_tokens = tokenize(normalize(ref.transcript_raw, profile), metric);
    if (ref_tokens.empty()) {
      if (skipped) skipped->push_back(ref.id);
      continue;
    }
    EditOps ops = align(ref_tokens, tokenize(normalize(hyp, profile), metric));
    result.totals += ops;
    result.utterances.push_back(
        {ref.id, metric, ops, 100.0 * static_cast<double>(ops.errors()) / static_cast<double>(ops.ref_len)});
  }
  if (result.totals.ref_len == 0) {
    throw PreconditionError("benchmark '" + benchmark + "' has no scorable references");
  }
  std::sort(result.utterances.begin(), result.utterances.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  result.row = ScoreRow{std::move(model), std::move(benchmark), language, metric,
                        100.0 * static_cast<double>(result.totals.errors()) /
                            static_cast<double>(result.totals.ref_len)};
  return result;
}

std::map<std::string, std::string> load_hypotheses(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("text") || !obj["text"].is_string()) {
      throw ParseError(path.string(), line_no, "expected {\"id\": string, \"text\": string}");
    }
    if (!out.emplace(obj["id"].get<std::string>(), obj["text"].get<std::string>()).second) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": duplicate id");
    }
  }
  return out;
}

std::string render_utterance_csv(const BenchmarkScore& score) {
  std::ostringstream out;
  out << "id,metric,substitutions,deletions,insertions,ref_len,value\n";
  for (const auto& u : score.utterances) {
    out << csv_field(u.id) << ',' << to_string(u.metric) << ',' << u.ops.substitutions << ','
        << u.ops.deletions << ',' << u.ops.insertions << ',' << u.ops.ref_len << ','
        << format_fixed(u.value, 2) << '\n';
  }
  return out.str();
}

AggregateReport aggregate(std::span<const ScoreRow> rows, std::optional<double> threshold) {
  if (rows.empty()) throw PreconditionError("aggregate needs at least one row");
  AggregateReport report;
  report.exclusion_threshold = threshold;
  for (const auto& row : rows) {
    if (threshold && row.value > *threshold) {
      report.excluded.push_back(row);
    } else {
      report.rows.push_back(row);
    }
  }
  if (report.rows.empty()) throw PreconditionError("every row exceeds the exclusion threshold");
  double sum = 0.0;
  for (const auto& row : report.rows) sum += row.value;
  report.average = sum / static_cast<double>(report.rows.size());
  return report;
}

std::string score_rows_csv(std::span<const ScoreRow> rows, bool header) {
  std::ostringstream out;
  if (header) out << "model,benchmark,language,metric,value\n";
  for (const auto& r : rows) {
    out << csv_field(r.model) << ',' << csv_field(r.benchmark) << ',' << to_string(r.language)
        << ',' << to_string(r.metric) << ',' << shortest(r.value) << '\n';
  }
  return out.str();
}

std::vector<ScoreRow> parse_score_rows_csv(std::string_view content, const std::string& source) {
  std::vector<ScoreRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool seen_header = false;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    auto line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto f = split_csv_line(line, source, line_no);
    if (!seen_header) {
      seen_header = true;
      if (f.size() == 5 && f[0] == "model") continue;
    }
    if (f.size() != 5) throw ParseError(source, line_no, "expected 5 fields");
    auto language = parse_language(f[2]);
    if (!language) throw ParseError(source, line_no, "unknown language '" + f[2] + "'");
    auto metric = parse_metric(f[3]);
    if (!metric) throw ParseError(source, line_no, "unknown metric '" + f[3] + "'");
    double value = 0.0;
    auto res = std::from_chars(f[4].data(), f[4].data() + f[4].size(), value);
    if (res.ec != std::errc() || res.ptr != f[4].data() + f[4].size()) {
      throw ParseError(source, line_no, "bad value '" + f[4] + "'");
    }
    rows.push_back({f[0], f[1], *language, *metric, value});
  }
  return rows;
}

std::vector<ScoreRow> load_score_rows(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_score_rows_csv(buf.str(), path.string());
}

std::vector<ModelSummary> aggregate_by_model(std::span<const ScoreRow> rows,
                                             std::optional<double> threshold) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<ScoreRow>> grouped;
  for (const auto& r : rows) {
    auto [it, inserted] = grouped.try_emplace(r.model);
    if (inserted) order.push_back(r.model);
    it->second.push_back(r);
  }
  std::vector<ModelSummary> out;
  for (const auto& model : order) {
    try {
      out.push_back({model, aggregate(grouped[model], threshold)});
    } catch (const PreconditionError& e) {
      throw PreconditionError("model '" + model + "': " + e.what());
    }
  }
  return out;
}

namespace {

struct Column {
  Language language;
  std::string benchmark;
  friend auto operator<=>(const Column&, const Column&) = default;
};

std::vector<Column> columns_of(std::span<const ModelSummary> summaries) {
  std::vector<Column> cols;
  auto add = [&](const ScoreRow& r) {
    Column c{r.language, r.benchmark};
    if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
  };
  for (const auto& s : summaries) {
    for (const auto& r : s.report.rows) add(r);
    for (const auto& r : s.report.excluded) add(r);
  }
  std::stable_sort(cols.begin(), cols.end(),
                   [](const Column& a, const Column& b) { return a.language < b.language; });
  return cols;
}

// Cell text for one model/column: value, "-" when excluded, empty when absent.
std::string cell_text(const AggregateReport& report, const Column& c) {
  for (const auto& r : report.rows) {
    if (r.language == c.language && r.benchmark == c.benchmark) return format_fixed(r.value, 2);
  }
  for (const auto& r : report.excluded) {
    if (r.language == c.language && r.benchmark == c.benchmark) return "-";
  }
  return "";
}

}  // namespace

std::string render_aggregate_markdown(std::span<const ModelSummary> summaries) {
  const auto cols = columns_of(summaries);
  std::ostringstream out;
  out << "| Model";
  for (const auto& c : cols) out << " | " << c.benchmark << " (" << to_string(c.language) << ")";
  out << " | Avg |\n|---";
  for (std::size_t i = 0; i <= cols.size(); ++i) out << "|--:";
  out << "|\n";
  for (const auto& s : summaries) {
    out << "| " << s.model;
    for (const auto& c : cols) out << " | " << cell_text(s.report, c);
    out << " | " << format_fixed(s.report.average, 2) << " |\n";
  }
  return out.str();
}

std::string render_aggregate_csv(std::span<const ModelSummary> summaries) {
  const auto cols = columns_of(summaries);
  std::ostringstream out;
  out << "model";
  for (const auto& c : cols) out << ',' << csv_field(c.benchmark + " (" + std::string(to_string(c.language)) + ")");
  out << ",avg,excluded\n";
  for (const auto& s : summaries) {
    out << csv_field(s.model);
    for (const auto& c : cols) out << ',' << cell_text(s.report, c);
    out << ',' << format_fixed(s.report.average, 2) << ',' << s.report.excluded.size() << '\n';
  }
  return out.str();
}

}  // namespace lion
