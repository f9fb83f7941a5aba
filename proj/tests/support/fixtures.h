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
#include <string>
#include <vector>

#include "lion/corpus.h"

namespace lion::testing {

// One line of data/dataset_sizes.csv: per-split sample counts and hours.
struct DatasetSizeRow {
  Language language;
  std::string dataset;
  std::array<std::size_t, 3> samples;
  std::array<double, 3> hours;
};

std::vector<DatasetSizeRow> load_dataset_sizes(const std::filesystem::path& csv);

struct FixtureOptions {
  bool train_only = false;
  // Adds two train utterances per dataset longer than 30 s (31.2 s, 45 s).
  bool overlength_extras = true;
};

inline constexpr std::size_t kOverlengthPerDataset = 2;

// Writes one JSON-lines manifest per dataset plus corpus.json into `dir`.
// Durations are whole milliseconds summing exactly to each row's hours.
// Returns the corpus.json path.
std::filesystem::path write_corpus_fixture(const std::vector<DatasetSizeRow>& rows,
                                           const std::filesystem::path& dir,
                                           const FixtureOptions& options = {});

// Duration in milliseconds of utterance i out of n for a cell of `hours`.
long long fixture_duration_ms(double hours, std::size_t n, std::size_t i);

std::filesystem::path data_dir();
std::filesystem::path mock_transcriber();

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& body);

}  // namespace lion::testing
