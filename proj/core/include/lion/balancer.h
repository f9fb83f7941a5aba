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
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lion/corpus.h"
#include "lion/rng.h"

namespace lion {

// Stage 1 (intra-language): dataset (l,k) of N_{l,k} train utterances is
// replicated r_{l,k} = ceil(N*_l / N_{l,k}) times and subsampled to N*_l,
// where N*_l is the largest dataset size in language l.
struct Stage1Plan {
  Language language;
  std::string dataset;
  std::size_t source_count = 0;   // N_{l,k}
  std::uint64_t replication = 1;  // r_{l,k}
  std::size_t target = 0;         // N*_l

  friend bool operator==(const Stage1Plan&, const Stage1Plan&) = default;
};

// Stage 2 (inter-language): the pooled Stage 1 output of language l is
// replicated R_l = ceil(N** / N*_l) times and subsampled to N**.
struct Stage2Plan {
  Language language;
  std::string largest_dataset;  // lexicographically first among ties
  std::size_t language_max = 0;  // N*_l
  std::size_t pooled_count = 0;  // K_l * N*_l
  std::uint64_t replication = 1;  // R_l
  std::size_t target = 0;         // N**

  friend bool operator==(const Stage2Plan&, const Stage2Plan&) = default;
};

struct SamplingPlan {
  std::vector<Stage1Plan> stage1;  // corpus order: language, then dataset name
  std::vector<Stage2Plan> stage2;  // language order
  std::size_t target = 0;          // N**

  std::size_t dataset_index(Language language, std::string_view dataset) const;
  const Stage2Plan& for_language(Language language) const;

  friend bool operator==(const SamplingPlan&, const SamplingPlan&) = default;
};

// Computes both stages' targets and replication factors from train counts.
// Throws PreconditionError naming the dataset if any train split is empty.
SamplingPlan plan(const CorpusSpec& corpus);

// One element of the virtual replicated list: source item and which copy.
struct ReplicaRef {
  std::size_t item = 0;
  std::uint64_t copy = 0;

  friend bool operator==(const ReplicaRef&, const ReplicaRef&) = default;
  friend auto operator<=>(const ReplicaRef&, const ReplicaRef&) = default;
};

// Replicates `item_count` items `factor` times (position x is item x mod n,
// copy x div n) and draws `target` distinct positions by partial
// Fisher-Yates. Output is in draw order. Requires factor >= 1 and
// target <= factor * item_count.
std::vector<ReplicaRef> replicate_subsample(std::size_t item_count, std::uint64_t factor,
                                            std::size_t target, SeededRng& rng);

template <class T>
std::vector<T> replicate_subsample(std::span<const T> items, std::uint64_t factor,
                                   std::size_t target, SeededRng& rng) {
  std::vector<T> out;
  out.reserve(target);
  for (const auto& ref : replicate_subsample(items.size(), factor, target, rng)) {
    out.push_back(items[ref.item]);
  }
  return out;
}

struct BalancedEntry {
  std::size_t dataset_index = 0;  // into SamplingPlan::stage1
  std::size_t source_index = 0;   // into that dataset's train split
  std::uint64_t stage1_copy = 0;
  std::uint64_t stage2_copy = 0;

  friend bool operator==(const BalancedEntry&, const BalancedEntry&) = default;
  friend auto operator<=>(const BalancedEntry&, const BalancedEntry&) = default;
};

struct BalancedCorpus {
  std::uint64_t seed = 0;
  bool stratified = false;
  SamplingPlan plan;
  std::map<Language, std::vector<BalancedEntry>> per_language;

  std::size_t size() const;
  // stage2_copy * r_{l,k} + stage1_copy; unique among an utterance's copies.
  std::uint64_t copy_index(const BalancedEntry& e) const;

  friend bool operator==(const BalancedCorpus&, const BalancedCorpus&) = default;
};

struct BalanceOptions {
  // Stage 2 draws N** / K_l from each dataset's Stage 1 block instead of
  // subsampling the pooled list uniformly.
  bool stratified = false;
};

// Two-stage balanced upsampling of the train split. Deterministic in
// (corpus, seed, options); every language ends with exactly N** entries.
BalancedCorpus balance(const CorpusSpec& corpus, std::uint64_t seed, BalanceOptions options = {});

nlohmann::ordered_json plan_to_json(const BalancedCorpus& bc);

// Writes balanced.jsonl (source manifest lines plus copy_index) and plan.json.
void export_balanced(const BalancedCorpus& bc, const CorpusSpec& corpus,
                     const std::filesystem::path& dir);

// Reads an export back against the corpus it was drawn from. Throws
// ValidationError if the recorded plan does not match plan(corpus).
BalancedCorpus load_balanced(const std::filesystem::path& dir, const CorpusSpec& corpus);

}  // namespace lion
