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

#include "fixtures.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lion::testing {
namespace {

std::string slug(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  return out;
}

}  // namespace

std::vector<DatasetSizeRow> load_dataset_sizes(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  std::vector<DatasetSizeRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 8) throw std::runtime_error("bad dataset size line: " + line);
    auto lang = parse_language(f[0]);
    if (!lang) throw std::runtime_error("bad language: " + f[0]);
    DatasetSizeRow row{*lang, f[1], {}, {}};
    for (int s = 0; s < 3; ++s) {
      row.samples[s] = std::stoul(f[2 + 2 * s]);
      row.hours[s] = std::stod(f[3 + 2 * s]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

long long fixture_duration_ms(double hours, std::size_t n, std::size_t i) {
  const long long total = std::llround(hours * 3600.0 * 1000.0);
  const long long base = total / static_cast<long long>(n);
  const long long rem = total % static_cast<long long>(n);
  long long d = base + (static_cast<long long>(i) < rem ? 1 : 0);
  // Zero-sum jitter on (even, odd) pairs keeps the cell total exact.
  const std::size_t pair = i / 2;
  if (pair * 2 + 1 < n) {
    const long long j = static_cast<long long>((pair * 7919) % 1001) - 500;
    d += (i % 2 == 0) ? j : -j;
  }
  return d;
}

std::filesystem::path write_corpus_fixture(const std::vector<DatasetSizeRow>& rows,
                                           const std::filesystem::path& dir,
                                           const FixtureOptions& options) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json config;
  config["config_version"] = 1;
  config["max_duration_s"] = 30.0;
  config["seed"] = 42;
  auto& manifests = config["manifests"] = nlohmann::ordered_json::array();

  for (const auto& row : rows) {
    const std::string lang(to_string(row.language));
    const std::string name = lang + "_" + slug(row.dataset) + ".jsonl";
    const std::string prefix = lang.substr(0, 2) + "-" + slug(row.dataset);
    std::FILE* fp = std::fopen((dir / name).c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot write " + (dir / name).string());
    std::vector<char> buf(1 << 20);
    std::setvbuf(fp, buf.data(), _IOFBF, buf.size());

    auto emit = [&](const std::string& id, Split split, long long ms, std::size_t i) {
      std::fprintf(fp,
                   "{\"id\":\"%s\",\"audio_path\":\"audio/%s/%s.wav\",\"duration_s\":%lld.%03lld,"
                   "\"text\":\"Utterance %zu, sample.\",\"language\":\"%s\",\"dataset\":\"%s\","
                   "\"split\":\"%s\"}\n",
                   id.c_str(), prefix.c_str(), id.c_str(), ms / 1000, ms % 1000, i, lang.c_str(),
                   row.dataset.c_str(), std::string(to_string(split)).c_str());
    };

    for (Split split : kAllSplits) {
      if (options.train_only && split != Split::kTrain) continue;
      const int s = static_cast<int>(split);
      const std::size_t n = row.samples[s];
      char id[96];
      for (std::size_t i = 0; i < n; ++i) {
        if (split == Split::kTrain && options.overlength_extras && (i == 0 || i == n / 2)) {
          std::snprintf(id, sizeof(id), "%s-%s-long-%06zu", prefix.c_str(),
                        std::string(to_string(split)).c_str(), i);
          emit(id, split, i == 0 ? 31200 : 45000, i);
        }
        std::snprintf(id, sizeof(id), "%s-%s-%06zu", prefix.c_str(),
                      std::string(to_string(split)).c_str(), i);
        emit(id, split, fixture_duration_ms(row.hours[s], n, i), i);
      }
    }
    std::fclose(fp);
    manifests.push_back({{"language", lang}, {"dataset", row.dataset}, {"path", name}});
  }

  const auto path = dir / "corpus.json";
  std::ofstream out(path);
  out << config.dump(2) << '\n';
  return path;
}

std::filesystem::path data_dir() { return LION_TEST_DATA_DIR; }
std::filesystem::path mock_transcriber() { return LION_MOCK_TRANSCRIBER; }

TempDir::TempDir(const std::string& tag) {
  static std::mt19937_64 gen(std::random_device{}());
  path_ = std::filesystem::temp_directory_path() /
          ("lion-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(gen() % 1000000));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
}

}  // namespace lion::testing
