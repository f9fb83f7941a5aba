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

#include "lion/config.h"

#include <fstream>

#include "lion/error.h"

namespace lion {
namespace {

Language require_language(const nlohmann::json& j, const std::string& where) {
  auto name = j.at("language").get<std::string>();
  auto lang = parse_language(name);
  if (!lang) throw ValidationError(where + ": unknown language '" + name + "'");
  return *lang;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

void require_exists(const std::filesystem::path& p, const std::string& what) {
  if (!std::filesystem::exists(p)) throw ValidationError(what + " not found: " + p.string());
}

}  // namespace

ToolConfig parse_tool_config(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  ToolConfig cfg;
  try {
    cfg.config_version = j.value("config_version", 0);
    if (cfg.config_version != kConfigVersion) {
      throw ValidationError("unsupported config_version " + std::to_string(cfg.config_version) +
                            " (expected " + std::to_string(kConfigVersion) + ")");
    }
    for (const auto& m : j.value("manifests", nlohmann::json::array())) {
      ManifestSource src{require_language(m, "manifests"), m.at("dataset").get<std::string>(), {}};
      if (m.contains("path")) src.paths.push_back(resolve(base_dir, m["path"].get<std::string>()));
      for (const auto& p : m.value("paths", nlohmann::json::array())) {
        src.paths.push_back(resolve(base_dir, p.get<std::string>()));
      }
      if (src.paths.empty()) {
        throw ValidationError("manifest entry " + src.dataset + " lists no paths");
      }
      for (const auto& p : src.paths) require_exists(p, "manifest");
      cfg.manifests.push_back(std::move(src));
    }
    if (auto it = j.find("normalization"); it != j.end()) cfg.normalization = it->get<NormProfile>();
    if (auto it = j.find("seed"); it != j.end() && !it->is_null()) {
      cfg.seed = it->get<std::uint64_t>();
    }
    cfg.max_duration_s = j.value("max_duration_s", 30.0);
    if (!(cfg.max_duration_s > 0.0)) throw ValidationError("max_duration_s must be > 0");
    for (const auto& b : j.value("benchmarks", nlohmann::json::array())) {
      BenchmarkSpec spec{b.at("name").get<std::string>(),
                         resolve(base_dir, b.at("manifest").get<std::string>()),
                         require_language(b, "benchmarks"), std::nullopt};
      if (b.contains("metric") && !b["metric"].is_null()) {
        auto name = b["metric"].get<std::string>();
        spec.metric = parse_metric(name);
        if (!spec.metric) throw ValidationError("benchmark " + spec.name + ": unknown metric " + name);
      }
      require_exists(spec.manifest, "benchmark manifest");
      cfg.benchmarks.push_back(std::move(spec));
    }
    if (j.contains("output_dir")) {
      cfg.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
    }
    if (auto it = j.find("exclusion_threshold"); it != j.end() && !it->is_null()) {
      cfg.exclusion_threshold = it->get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

ToolConfig load_tool_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  return parse_tool_config(j, path.parent_path());
}

ManifestLoad load_corpus(const ToolConfig& config) {
  ManifestLoad result;
  for (const auto& src : config.manifests) {
    std::size_t count = 0;
    for (const auto& path : src.paths) {
      auto loaded = load_manifest(path);
      for (auto& w : loaded.warnings) result.warnings.push_back(std::move(w));
      for (const auto& [key, ds] : loaded.corpus.datasets) {
        if (key.language != src.language || key.dataset != src.dataset) {
          throw ValidationError(path.string() + ": utterances of " +
                                std::string(to_string(key.language)) + "/" + key.dataset +
                                " listed under " + std::string(to_string(src.language)) + "/" +
                                src.dataset);
        }
        count += ds.size();
      }
      merge_corpus(result.corpus, std::move(loaded.corpus), path.string());
    }
    if (count == 0) {
      throw ValidationError("dataset " + std::string(to_string(src.language)) + "/" + src.dataset +
                            " has no utterances");
    }
  }
  return result;
}

}  // namespace lion
