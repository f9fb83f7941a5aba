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

#include <gtest/gtest.h>

#include "fixtures.h"
#include "lion/error.h"

namespace lion {
namespace {

const char* kManifestLine =
    R"({"id":"a1","audio_path":"/a1.wav","duration_s":2.5,"text":"hi","language":"malay","dataset":"Meso","split":"train"})";

TEST(ToolConfig, ParsesAndResolvesRelativePaths) {
  testing::TempDir dir("config");
  testing::write_text(dir / "meso.jsonl", std::string(kManifestLine) + "\n");
  testing::write_text(dir / "config.json", R"({
    "config_version": 1,
    "manifests": [{"language": "malay", "dataset": "Meso", "path": "meso.jsonl"}],
    "normalization": {"lowercase": true, "strip_punctuation": false, "collapse_whitespace": true},
    "seed": 7,
    "max_duration_s": 20,
    "benchmarks": [{"name": "Meso", "manifest": "meso.jsonl", "language": "malay", "metric": "cer"}],
    "exclusion_threshold": 150
  })");
  auto cfg = load_tool_config(dir / "config.json");
  ASSERT_EQ(cfg.manifests.size(), 1u);
  EXPECT_EQ(cfg.manifests[0].paths[0], dir / "meso.jsonl");
  EXPECT_FALSE(cfg.normalization.strip_punctuation);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_DOUBLE_EQ(cfg.max_duration_s, 20.0);
  ASSERT_EQ(cfg.benchmarks.size(), 1u);
  EXPECT_EQ(cfg.benchmarks[0].metric, Metric::kCer);
  EXPECT_EQ(cfg.exclusion_threshold, 150.0);
  auto loaded = load_corpus(cfg);
  EXPECT_EQ(loaded.corpus.size(), 1u);
}

TEST(ToolConfig, DefaultsApply) {
  auto cfg = parse_tool_config(nlohmann::json{{"config_version", 1}}, ".");
  EXPECT_DOUBLE_EQ(cfg.max_duration_s, 30.0);
  EXPECT_FALSE(cfg.seed.has_value());
  EXPECT_FALSE(cfg.exclusion_threshold.has_value());
  EXPECT_TRUE(cfg.normalization.lowercase);
}

TEST(ToolConfig, RejectsBadInput) {
  testing::TempDir dir("config-bad");
  EXPECT_THROW(parse_tool_config(nlohmann::json{{"config_version", 2}}, dir.path()), ValidationError);
  EXPECT_THROW(parse_tool_config(nlohmann::json{{"config_version", 1},
                                                {"manifests", {{{"language", "english"},
                                                                {"dataset", "X"},
                                                                {"path", "missing.jsonl"}}}}},
                                 dir.path()),
               ValidationError);
  EXPECT_THROW(parse_tool_config(nlohmann::json{{"config_version", 1}, {"max_duration_s", 0}}, "."),
               ValidationError);
  testing::write_text(dir / "broken.json", "{ not json");
  EXPECT_THROW(load_tool_config(dir / "broken.json"), ParseError);
  EXPECT_THROW(load_tool_config(dir / "absent.json"), IoError);
}

TEST(ToolConfig, ManifestMustMatchDeclaredDataset) {
  testing::TempDir dir("config-mismatch");
  testing::write_text(dir / "meso.jsonl", std::string(kManifestLine) + "\n");
  auto cfg = parse_tool_config(
      nlohmann::json{{"config_version", 1},
                     {"manifests", {{{"language", "malay"}, {"dataset", "Other"}, {"path", "meso.jsonl"}}}}},
      dir.path());
  EXPECT_THROW(load_corpus(cfg), ValidationError);
}

}  // namespace
}  // namespace lion
