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

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lion {

// Declaration order is presentation order for every table.
enum class Language { kEnglish, kMandarin, kTamil, kMalay };
enum class Split { kTrain, kValid, kTest };

inline constexpr std::array<Language, 4> kAllLanguages = {
    Language::kEnglish, Language::kMandarin, Language::kTamil, Language::kMalay};
inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kValid,
                                                    Split::kTest};

std::string_view to_string(Language language);
std::string_view to_string(Split split);
std::optional<Language> parse_language(std::string_view text);
std::optional<Split> parse_split(std::string_view text);

struct Utterance {
  std::string id;
  std::string audio_path;
  double duration_s = 0.0;
  std::string transcript_raw;
  Language language = Language::kEnglish;
  std::string dataset;
  Split split = Split::kTrain;
  // Fields the manifest carried that we do not interpret; written back on save.
  // Null when there were none, otherwise an object.
  nlohmann::json extra;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

struct DatasetKey {
  Language language;
  std::string dataset;

  friend auto operator<=>(const DatasetKey&, const DatasetKey&) = default;
};

// One dataset's utterances, one list per split, in file order.
struct DatasetSplits {
  std::array<std::vector<Utterance>, 3> splits;

  std::vector<Utterance>& operator[](Split s) { return splits[static_cast<int>(s)]; }
  const std::vector<Utterance>& operator[](Split s) const {
    return splits[static_cast<int>(s)];
  }
  std::size_t size() const;

  friend bool operator==(const DatasetSplits&, const DatasetSplits&) = default;
};

// The full multi-language manifest collection. Iteration order is language
// order, then dataset name.
struct CorpusSpec {
  std::map<DatasetKey, DatasetSplits> datasets;

  std::size_t size() const;
  std::vector<Language> languages() const;
  // Adds an utterance under its own (language, dataset) key.
  void add(Utterance utt);

  friend bool operator==(const CorpusSpec&, const CorpusSpec&) = default;
};

struct ManifestLoad {
  CorpusSpec corpus;
  std::vector<std::string> warnings;
};

// Parses a JSON-lines manifest. Throws ParseError (with line number) on
// malformed lines or unknown enums, ValidationError on non-positive durations
// or duplicate ids within (dataset, split).
ManifestLoad load_manifest(const std::filesystem::path& path);
ManifestLoad parse_manifest(std::string_view content, const std::string& source_name);

// Same parsing and validation as load_manifest, keeping file order.
std::vector<Utterance> load_utterance_list(const std::filesystem::path& path);

// Writes every utterance, dataset by dataset and split by split.
void save_manifest(const CorpusSpec& corpus, const std::filesystem::path& path);
std::string manifest_line(const Utterance& utt);

// Merges `other` into `into`; duplicate ids within (dataset, split) are rejected.
void merge_corpus(CorpusSpec& into, CorpusSpec other, const std::string& source_name);

// Keeps utterances with duration_s <= max_s, preserving order.
struct FilterResult {
  CorpusSpec corpus;
  std::size_t dropped = 0;
};
FilterResult filter_by_duration(const CorpusSpec& corpus, double max_s = 30.0);

struct StatsCell {
  std::size_t samples = 0;
  double seconds = 0.0;

  double hours() const { return seconds / 3600.0; }
  StatsCell& operator+=(const StatsCell& o) {
    samples += o.samples;
    seconds += o.seconds;
    return *this;
  }
};

struct StatsRow {
  Language language;
  std::string dataset;
  std::array<StatsCell, 3> per_split;
  StatsCell total;

  const StatsCell& operator[](Split s) const { return per_split[static_cast<int>(s)]; }
};

struct StatsTable {
  std::vector<StatsRow> rows;
  std::map<Language, StatsRow> language_subtotals;
  std::array<StatsCell, 3> split_totals;
  StatsCell grand_total;

  const StatsRow* find(Language language, std::string_view dataset) const;
};

StatsTable compute_stats(const CorpusSpec& corpus);

// One CSV line per (language, dataset, split) plus subtotal and total lines.
std::string render_stats_csv(const StatsTable& table);
// Per-language block layout: S/H column pairs for Train, Valid, Test, Total.
std::string render_stats_markdown(const StatsTable& table);

}  // namespace lion
