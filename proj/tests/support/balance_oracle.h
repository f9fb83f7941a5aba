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

// Straight-line re-implementation of two-stage balanced upsampling for small
// corpora. Shares no code with the library: its own generator, hash, bounded
// draw, and a fully materialized replicate-then-shuffle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace lion::testing::oracle {

struct SourceDataset {
  std::string language;  // lowercase name, e.g. "english"
  int language_rank;     // presentation order of the language
  std::string dataset;
  std::vector<std::string> ids;  // train split, file order
};

// (language, dataset, utterance id, stage1 copy, stage2 copy)
using Sample = std::tuple<std::string, std::string, std::string, std::uint64_t, std::uint64_t>;

inline std::uint64_t mix(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, const std::string& key) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t s = master ^ h;
  return mix(s);
}

inline std::uint64_t draw(std::uint64_t& state, std::uint64_t n) {
  std::uint64_t reject_below = (~n + 1) % n;
  while (true) {
    std::uint64_t r = mix(state);
    if (r >= reject_below) return r % n;
  }
}

struct Item {
  std::size_t dataset;
  std::size_t index;
  std::uint64_t copy1;
  std::uint64_t copy2;
};

// Materializes `copies` back-to-back copies of `items`, shuffles the first
// `keep` slots Fisher-Yates style and returns them; copy numbers land in
// copy1 (stage 1) or copy2 (stage 2).
inline std::vector<Item> replicate_and_pick(const std::vector<Item>& items, std::uint64_t copies,
                                            std::size_t keep, std::uint64_t seed, bool stage2) {
  std::vector<Item> big;
  for (std::uint64_t c = 0; c < copies; ++c) {
    for (Item it : items) {
      if (stage2) {
        it.copy2 = c;
      } else {
        it.copy1 = c;
      }
      big.push_back(it);
    }
  }
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < keep; ++i) {
    std::size_t j = i + draw(state, big.size() - i);
    std::swap(big[i], big[j]);
  }
  big.resize(keep);
  return big;
}

inline std::vector<Sample> balance(std::vector<SourceDataset> sources, std::uint64_t seed) {
  std::sort(sources.begin(), sources.end(), [](const auto& a, const auto& b) {
    return std::tie(a.language_rank, a.dataset) < std::tie(b.language_rank, b.dataset);
  });
  std::map<int, std::size_t> biggest;
  for (const auto& s : sources) {
    biggest[s.language_rank] = std::max(biggest[s.language_rank], s.ids.size());
  }
  std::size_t global = 0;
  for (auto& [rank, n] : biggest) global = std::max(global, n);

  std::vector<Sample> out;
  for (auto& [rank, top] : biggest) {
    std::vector<Item> pooled;
    std::string lang;
    for (std::size_t d = 0; d < sources.size(); ++d) {
      const auto& s = sources[d];
      if (s.language_rank != rank) continue;
      lang = s.language;
      std::vector<Item> items;
      for (std::size_t i = 0; i < s.ids.size(); ++i) items.push_back({d, i, 0, 0});
      std::uint64_t r = (top + s.ids.size() - 1) / s.ids.size();
      auto picked = replicate_and_pick(items, r, top, stream_seed(seed, lang + ":" + s.dataset + ":1"),
                                       false);
      pooled.insert(pooled.end(), picked.begin(), picked.end());
    }
    std::uint64_t big_r = (global + top - 1) / top;
    auto final_items = replicate_and_pick(pooled, big_r, global, stream_seed(seed, lang + ":*:2"), true);
    for (const auto& it : final_items) {
      const auto& s = sources[it.dataset];
      out.emplace_back(s.language, s.dataset, s.ids[it.index], it.copy1, it.copy2);
    }
  }
  return out;
}

}  // namespace lion::testing::oracle
