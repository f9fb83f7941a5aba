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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lion/corpus.h"
#include "lion/scoring.h"
#include "lion/text_norm.h"

namespace lion {

inline constexpr int kConfigVersion = 1;

struct ManifestSource {
  Language language;
  std::string dataset;
  std::vector<std::filesystem::path> paths;
};

struct BenchmarkSpec {
  std::string name;
  std::filesystem::path manifest;
  Language language;
  std::optional<Metric> metric;  // overrides the language default
};

// Shared configuration for every subcommand. Relative paths are resolved
// against the config file's directory.
struct ToolConfig {
  int config_version = kConfigVersion;
  std::vector<ManifestSource> manifests;
  NormProfile normalization;
  std::optional<std::uint64_t> seed;
  double max_duration_s = 30.0;
  std::vector<BenchmarkSpec> benchmarks;
  std::filesystem::path output_dir;
  std::optional<double> exclusion_threshold;
};

// Parses and validates: config_version must be 1 and every referenced
// manifest must exist.
ToolConfig load_tool_config(const std::filesystem::path& path);
ToolConfig parse_tool_config(const nlohmann::json& j, const std::filesystem::path& base_dir);

// Loads every listed manifest and checks that each utterance belongs to the
// (language, dataset) it is listed under.
ManifestLoad load_corpus(const ToolConfig& config);

}  // namespace lion
