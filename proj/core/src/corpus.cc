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

#include "lion/corpus.h"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>

#include "lion/error.h"
#include "lion/numeric.h"

namespace lion {
namespace {

constexpr std::array<std::string_view, 4> kLanguageNames = {"english", "mandarin", "tamil",
                                                            "malay"};
constexpr std::array<std::string_view, 4> kLanguageTitles = {"English", "Mandarin", "Tamil",
                                                             "Malay"};
constexpr std::array<std::string_view, 3> kSplitNames = {"train", "valid", "test"};

const std::set<std::string, std::less<>> kCoreFields = {
    "id", "audio_path", "duration_s", "text", "language", "dataset", "split"};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

// RapidJSON value to nlohmann JSON, for fields carried through untouched.
nlohmann::json to_nlohmann(const rapidjson::Value& v) {
  switch (v.GetType()) {
    case rapidjson::kNullType:
      return nullptr;
    case rapidjson::kFalseType:
      return false;
    case rapidjson::kTrueType:
      return true;
    case rapidjson::kStringType:
      return std::string(v.GetString(), v.GetStringLength());
    case rapidjson::kNumberType:
      if (v.IsUint64()) return v.GetUint64();
      if (v.IsInt64()) return v.GetInt64();
      return v.GetDouble();
    case rapidjson::kArrayType: {
      auto arr = nlohmann::json::array();
      for (const auto& item : v.GetArray()) arr.push_back(to_nlohmann(item));
      return arr;
    }
    case rapidjson::kObjectType: {
      auto obj = nlohmann::json::object();
      for (const auto& m : v.GetObject()) {
        obj[std::string(m.name.GetString(), m.name.GetStringLength())] = to_nlohmann(m.value);
      }
      return obj;
    }
  }
  return nullptr;
}

std::string require_string(const rapidjson::Value& obj, const char* key, const std::string& source,
                           std::size_t line_no) {
  auto it = obj.FindMember(key);
  if (it == obj.MemberEnd()) throw ParseError(source, line_no, std::string("missing field '") + key + "'");
  if (!it->value.IsString()) {
    throw ParseError(source, line_no, std::string("field '") + key + "' must be a string");
  }
  return std::string(it->value.GetString(), it->value.GetStringLength());
}

// Manifest lines go through RapidJSON: the corpus loader parses hundreds of
// thousands of them and this is several times faster than a DOM per line.
Utterance parse_line(std::string_view line, const std::string& source, std::size_t line_no) {
  rapidjson::Document obj;
  obj.Parse<rapidjson::kParseFullPrecisionFlag | rapidjson::kParseValidateEncodingFlag>(line.data(), line.size());
  if (obj.HasParseError()) {
    throw ParseError(source, line_no,
                     std::string("invalid JSON: ") + rapidjson::GetParseError_En(obj.GetParseError()) +
                         " at offset " + std::to_string(obj.GetErrorOffset()));
  }
  if (!obj.IsObject()) throw ParseError(source, line_no, "expected a JSON object");

  Utterance utt;
  utt.id = require_string(obj, "id", source, line_no);
  utt.audio_path = require_string(obj, "audio_path", source, line_no);
  utt.transcript_raw = require_string(obj, "text", source, line_no);
  utt.dataset = require_string(obj, "dataset", source, line_no);

  const auto lang = require_string(obj, "language", source, line_no);
  auto language = parse_language(lang);
  if (!language) throw ParseError(source, line_no, "unknown language '" + lang + "'");
  utt.language = *language;

  const auto split_name = require_string(obj, "split", source, line_no);
  auto split = parse_split(split_name);
  if (!split) throw ParseError(source, line_no, "unknown split '" + split_name + "'");
  utt.split = *split;

  auto dur = obj.FindMember("duration_s");
  if (dur == obj.MemberEnd()) throw ParseError(source, line_no, "missing field 'duration_s'");
  if (!dur->value.IsNumber()) throw ParseError(source, line_no, "field 'duration_s' must be a number");
  utt.duration_s = dur->value.GetDouble();
  if (!(utt.duration_s > 0.0)) {
    throw ValidationError(source + ":" + std::to_string(line_no) +
                          ": duration_s must be > 0, got " + to_nlohmann(dur->value).dump());
  }
  if (utt.id.empty()) throw ValidationError(source + ":" + std::to_string(line_no) + ": empty id");

  for (const auto& m : obj.GetObject()) {
    std::string key(m.name.GetString(), m.name.GetStringLength());
    if (!kCoreFields.contains(key)) utt.extra[key] = to_nlohmann(m.value);
  }
  return utt;
}

std::string cell_md(const StatsCell& c) {
  return group_thousands(static_cast<long long>(c.samples)) + " | " + format_fixed(c.hours(), 2);
}

}  // namespace

std::string_view to_string(Language language) {
  return kLanguageNames[static_cast<int>(language)];
}

std::string_view to_string(Split split) { return kSplitNames[static_cast<int>(split)]; }

std::optional<Language> parse_language(std::string_view text) {
  for (std::size_t i = 0; i < kLanguageNames.size(); ++i) {
    if (kLanguageNames[i] == text) return static_cast<Language>(i);
  }
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view text) {
  for (std::size_t i = 0; i < kSplitNames.size(); ++i) {
    if (kSplitNames[i] == text) return static_cast<Split>(i);
  }
  return std::nullopt;
}

std::size_t DatasetSplits::size() const {
  std::size_t n = 0;
  for (const auto& s : splits) n += s.size();
  return n;
}

std::size_t CorpusSpec::size() const {
  std::size_t n = 0;
  for (const auto& [key, ds] : datasets) n += ds.size();
  return n;
}

std::vector<Language> CorpusSpec::languages() const {
  std::vector<Language> out;
  for (const auto& [key, ds] : datasets) {
    if (out.empty() || out.back() != key.language) out.push_back(key.language);
  }
  return out;
}

void CorpusSpec::add(Utterance utt) {
  DatasetKey key{utt.language, utt.dataset};
  auto split = utt.split;
  datasets[std::move(key)][split].push_back(std::move(utt));
}

namespace {

template <class Sink>
void for_each_line(std::string_view content, const std::string& source_name, Sink&& sink) {
  std::map<std::pair<DatasetKey, Split>, std::unordered_set<std::string>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    auto line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (is_blank(line)) continue;

    Utterance utt = parse_line(line, source_name, line_no);
    auto& ids = seen[{DatasetKey{utt.language, utt.dataset}, utt.split}];
    if (!ids.insert(utt.id).second) {
      throw ValidationError(source_name + ":" + std::to_string(line_no) + ": duplicate id '" +
                            utt.id + "' in " + utt.dataset + "/" +
                            std::string(to_string(utt.split)));
    }
    sink(std::move(utt));
  }
}

}  // namespace

ManifestLoad parse_manifest(std::string_view content, const std::string& source_name) {
  ManifestLoad result;
  for_each_line(content, source_name, [&](Utterance&& utt) { result.corpus.add(std::move(utt)); });
  if (result.corpus.datasets.empty()) {
    result.warnings.push_back(source_name + ": manifest contains no utterances");
  }
  return result;
}

std::vector<Utterance> load_utterance_list(const std::filesystem::path& path) {
  std::vector<Utterance> out;
  for_each_line(read_file(path), path.string(),
                [&](Utterance&& utt) { out.push_back(std::move(utt)); });
  return out;
}

ManifestLoad load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.string());
}

std::string manifest_line(const Utterance& utt) {
  nlohmann::ordered_json obj;
  obj["id"] = utt.id;
  obj["audio_path"] = utt.audio_path;
  obj["duration_s"] = utt.duration_s;
  obj["text"] = utt.transcript_raw;
  obj["language"] = to_string(utt.language);
  obj["dataset"] = utt.dataset;
  obj["split"] = to_string(utt.split);
  for (auto it = utt.extra.begin(); it != utt.extra.end(); ++it) obj[it.key()] = it.value();
  return obj.dump();
}

void save_manifest(const CorpusSpec& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [key, ds] : corpus.datasets) {
    for (const auto& split : ds.splits) {
      for (const auto& utt : split) out << manifest_line(utt) << '\n';
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void merge_corpus(CorpusSpec& into, CorpusSpec other, const std::string& source_name) {
  for (auto& [key, ds] : other.datasets) {
    auto& target = into.datasets[key];
    for (Split split : kAllSplits) {
      auto& dst = target[split];
      std::unordered_set<std::string> ids;
      for (const auto& u : dst) ids.insert(u.id);
      for (auto& u : ds[split]) {
        if (!ids.insert(u.id).second) {
          throw ValidationError(source_name + ": duplicate id '" + u.id + "' in " + key.dataset +
                                "/" + std::string(to_string(split)));
        }
        dst.push_back(std::move(u));
      }
    }
  }
}

FilterResult filter_by_duration(const CorpusSpec& corpus, double max_s) {
  if (!(max_s > 0.0)) throw PreconditionError("max duration must be > 0");
  FilterResult result;
  for (const auto& [key, ds] : corpus.datasets) {
    DatasetSplits kept;
    for (Split split : kAllSplits) {
      for (const auto& utt : ds[split]) {
        if (utt.duration_s <= max_s) {
          kept[split].push_back(utt);
        } else {
          ++result.dropped;
        }
      }
    }
    if (kept.size() > 0) result.corpus.datasets.emplace(key, std::move(kept));
  }
  return result;
}

const StatsRow* StatsTable::find(Language language, std::string_view dataset) const {
  for (const auto& row : rows) {
    if (row.language == language && row.dataset == dataset) return &row;
  }
  return nullptr;
}

StatsTable compute_stats(const CorpusSpec& corpus) {
  StatsTable table;
  for (const auto& [key, ds] : corpus.datasets) {
    StatsRow row{key.language, key.dataset, {}, {}};
    for (Split split : kAllSplits) {
      auto& cell = row.per_split[static_cast<int>(split)];
      for (const auto& utt : ds[split]) {
        ++cell.samples;
        cell.seconds += utt.duration_s;
      }
      row.total += cell;
    }
    table.rows.push_back(std::move(row));
  }

  for (const auto& row : table.rows) {
    auto [it, inserted] =
        table.language_subtotals.try_emplace(row.language, StatsRow{row.language, "", {}, {}});
    auto& sub = it->second;
    for (int s = 0; s < 3; ++s) {
      sub.per_split[s] += row.per_split[s];
      table.split_totals[s] += row.per_split[s];
    }
    sub.total += row.total;
    table.grand_total += row.total;
  }
  return table;
}

std::string render_stats_csv(const StatsTable& table) {
  std::ostringstream out;
  out << "language,dataset,split,samples,hours\n";
  auto line = [&](std::string_view lang, std::string_view dataset, std::string_view split,
                  const StatsCell& c) {
    out << lang << ',' << dataset << ',' << split << ',' << c.samples << ','
        << format_fixed(c.hours(), 2) << '\n';
  };
  for (const auto& row : table.rows) {
    for (Split s : kAllSplits) line(to_string(row.language), row.dataset, to_string(s), row[s]);
    line(to_string(row.language), row.dataset, "total", row.total);
  }
  for (Split s : kAllSplits) {
    line("total", "", to_string(s), table.split_totals[static_cast<int>(s)]);
  }
  line("total", "", "total", table.grand_total);
  return out.str();
}

std::string render_stats_markdown(const StatsTable& table) {
  std::ostringstream out;
  out << "| Lang. | Dataset | Train S | Train H | Valid S | Valid H | Test S | Test H | Total S | "
         "Total H |\n";
  out << "|---|---|--:|--:|--:|--:|--:|--:|--:|--:|\n";
  std::optional<Language> last;
  for (const auto& row : table.rows) {
    std::string_view lang = last == row.language
                                ? std::string_view()
                                : kLanguageTitles[static_cast<int>(row.language)];
    last = row.language;
    out << "| " << lang << " | " << row.dataset;
    for (Split s : kAllSplits) out << " | " << cell_md(row[s]);
    out << " | " << cell_md(row.total) << " |\n";
  }
  out << "| **Total** | -";
  for (const auto& c : table.split_totals) out << " | " << cell_md(c);
  out << " | " << cell_md(table.grand_total) << " |\n";
  return out.str();
}

}  // namespace lion
