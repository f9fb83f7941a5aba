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

#include "lion/balancer.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "lion/error.h"

namespace lion {
namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::vector<const std::vector<Utterance>*> train_lists(const CorpusSpec& corpus) {
  std::vector<const std::vector<Utterance>*> out;
  for (const auto& [key, ds] : corpus.datasets) out.push_back(&ds[Split::kTrain]);
  return out;
}

// Dense Fisher-Yates over an explicit index array.
std::vector<std::uint64_t> draw_dense(std::uint64_t population, std::size_t target,
                                      SeededRng& rng) {
  std::vector<std::uint64_t> slots(population);
  for (std::uint64_t i = 0; i < population; ++i) slots[i] = i;
  for (std::size_t i = 0; i < target; ++i) {
    std::uint64_t j = i + rng.below(population - i);
    std::swap(slots[i], slots[j]);
  }
  slots.resize(target);
  return slots;
}

// Same draws as draw_dense, storing only displaced slots.
std::vector<std::uint64_t> draw_sparse(std::uint64_t population, std::size_t target,
                                       SeededRng& rng) {
  std::unordered_map<std::uint64_t, std::uint64_t> moved;
  moved.reserve(target * 2);
  auto value_at = [&](std::uint64_t k) {
    auto it = moved.find(k);
    return it == moved.end() ? k : it->second;
  };
  std::vector<std::uint64_t> out;
  out.reserve(target);
  for (std::size_t i = 0; i < target; ++i) {
    std::uint64_t j = i + rng.below(population - i);
    std::uint64_t picked = value_at(j);
    moved[j] = value_at(i);
    out.push_back(picked);
  }
  return out;
}

}  // namespace

std::size_t SamplingPlan::dataset_index(Language language, std::string_view dataset) const {
  for (std::size_t i = 0; i < stage1.size(); ++i) {
    if (stage1[i].language == language && stage1[i].dataset == dataset) return i;
  }
  throw ValidationError("dataset " + std::string(to_string(language)) + "/" +
                        std::string(dataset) + " is not in the sampling plan");
}

const Stage2Plan& SamplingPlan::for_language(Language language) const {
  for (const auto& s : stage2) {
    if (s.language == language) return s;
  }
  throw ValidationError("language " + std::string(to_string(language)) +
                        " is not in the sampling plan");
}

SamplingPlan plan(const CorpusSpec& corpus) {
  if (corpus.datasets.empty()) throw PreconditionError("cannot plan an empty corpus");
  SamplingPlan p;
  for (const auto& [key, ds] : corpus.datasets) {
    std::size_t n = ds[Split::kTrain].size();
    if (n == 0) {
      throw PreconditionError("dataset " + std::string(to_string(key.language)) + "/" +
                              key.dataset + " has an empty train split");
    }
    p.stage1.push_back({key.language, key.dataset, n, 1, 0});
  }

  // Map order visits datasets by name, so strict '>' keeps the
  // lexicographically first dataset among equal maxima.
  for (Language language : corpus.languages()) {
    Stage2Plan s2{language, "", 0, 0, 1, 0};
    std::size_t datasets = 0;
    for (const auto& s1 : p.stage1) {
      if (s1.language != language) continue;
      ++datasets;
      if (s1.source_count > s2.language_max) {
        s2.language_max = s1.source_count;
        s2.largest_dataset = s1.dataset;
      }
    }
    s2.pooled_count = datasets * s2.language_max;
    p.stage2.push_back(std::move(s2));
  }

  for (auto& s1 : p.stage1) {
    s1.target = p.for_language(s1.language).language_max;
    s1.replication = ceil_div(s1.target, s1.source_count);
  }
  for (const auto& s2 : p.stage2) p.target = std::max(p.target, s2.language_max);
  for (auto& s2 : p.stage2) {
    s2.target = p.target;
    s2.replication = ceil_div(p.target, s2.language_max);
  }
  return p;
}

std::vector<ReplicaRef> replicate_subsample(std::size_t item_count, std::uint64_t factor,
                                            std::size_t target, SeededRng& rng) {
  if (factor < 1) throw PreconditionError("replication factor must be >= 1");
  const std::uint64_t population = factor * item_count;
  if (item_count != 0 && population / item_count != factor) {
    throw PreconditionError("replicated population overflows");
  }
  if (target > population) {
    throw PreconditionError("subsample target " + std::to_string(target) + " exceeds " +
                            std::to_string(factor) + " x " + std::to_string(item_count));
  }
  auto slots = population <= 2 * static_cast<std::uint64_t>(target)
                   ? draw_dense(population, target, rng)
                   : draw_sparse(population, target, rng);
  std::vector<ReplicaRef> out;
  out.reserve(target);
  for (std::uint64_t x : slots) out.push_back({static_cast<std::size_t>(x % item_count), x / item_count});
  return out;
}

std::size_t BalancedCorpus::size() const {
  std::size_t n = 0;
  for (const auto& [lang, entries] : per_language) n += entries.size();
  return n;
}

std::uint64_t BalancedCorpus::copy_index(const BalancedEntry& e) const {
  return e.stage2_copy * plan.stage1[e.dataset_index].replication + e.stage1_copy;
}

BalancedCorpus balance(const CorpusSpec& corpus, std::uint64_t seed, BalanceOptions options) {
  BalancedCorpus bc;
  bc.seed = seed;
  bc.stratified = options.stratified;
  bc.plan = plan(corpus);
  const auto lists = train_lists(corpus);

  for (const auto& s2 : bc.plan.stage2) {
    const auto lang_name = to_string(s2.language);

    // Stage 1: each dataset's draw lands in the pool in dataset-name order.
    std::vector<BalancedEntry> pool;
    std::vector<std::size_t> block_starts;
    pool.reserve(s2.pooled_count);
    for (std::size_t d = 0; d < bc.plan.stage1.size(); ++d) {
      const auto& s1 = bc.plan.stage1[d];
      if (s1.language != s2.language) continue;
      block_starts.push_back(pool.size());
      SeededRng rng(substream_seed(seed, lang_name, s1.dataset, "1"));
      for (const auto& ref : replicate_subsample(lists[d]->size(), s1.replication, s1.target, rng)) {
        pool.push_back({d, ref.item, ref.copy, 0});
      }
    }

    // Stage 2.
    auto& out = bc.per_language[s2.language];
    out.reserve(s2.target);
    if (!options.stratified) {
      SeededRng rng(substream_seed(seed, lang_name, "*", "2"));
      for (const auto& ref : replicate_subsample(pool.size(), s2.replication, s2.target, rng)) {
        BalancedEntry e = pool[ref.item];
        e.stage2_copy = ref.copy;
        out.push_back(e);
      }
    } else {
      const std::size_t blocks = block_starts.size();
      for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t share = s2.target / blocks + (b < s2.target % blocks ? 1 : 0);
        const std::size_t start = block_starts[b];
        const std::size_t len = s2.language_max;
        const auto& s1 = bc.plan.stage1[pool[start].dataset_index];
        SeededRng rng(substream_seed(seed, lang_name, s1.dataset, "2s"));
        for (const auto& ref : replicate_subsample(len, ceil_div(share, len), share, rng)) {
          BalancedEntry e = pool[start + ref.item];
          e.stage2_copy = ref.copy;
          out.push_back(e);
        }
      }
    }
  }
  return bc;
}

nlohmann::ordered_json plan_to_json(const BalancedCorpus& bc) {
  nlohmann::ordered_json j;
  j["seed"] = bc.seed;
  j["stratified"] = bc.stratified;
  j["n_star_star"] = bc.plan.target;
  j["total"] = bc.size();
  auto& s1 = j["stage1"] = nlohmann::ordered_json::array();
  for (const auto& s : bc.plan.stage1) {
    nlohmann::ordered_json row;
    row["language"] = to_string(s.language);
    row["dataset"] = s.dataset;
    row["source_count"] = s.source_count;
    row["replication"] = s.replication;
    row["target"] = s.target;
    s1.push_back(std::move(row));
  }
  auto& s2 = j["stage2"] = nlohmann::ordered_json::array();
  for (const auto& s : bc.plan.stage2) {
    nlohmann::ordered_json row;
    row["language"] = to_string(s.language);
    row["largest_dataset"] = s.largest_dataset;
    row["language_max"] = s.language_max;
    row["pooled_count"] = s.pooled_count;
    row["replication"] = s.replication;
    row["target"] = s.target;
    row["output_count"] = bc.per_language.count(s.language) ? bc.per_language.at(s.language).size() : 0;
    s2.push_back(std::move(row));
  }
  return j;
}

void export_balanced(const BalancedCorpus& bc, const CorpusSpec& corpus,
                     const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const auto lists = train_lists(corpus);
  if (lists.size() != bc.plan.stage1.size()) {
    throw PreconditionError("balanced corpus was not drawn from this corpus");
  }
  {
    std::ofstream out(dir / "balanced.jsonl", std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir / "balanced.jsonl").string());
    for (const auto& [lang, entries] : bc.per_language) {
      for (const auto& e : entries) {
        Utterance utt = (*lists[e.dataset_index])[e.source_index];
        utt.extra["copy_index"] = bc.copy_index(e);
        out << manifest_line(utt) << '\n';
      }
    }
    if (!out) throw IoError("write failed for balanced.jsonl");
  }
  std::ofstream plan_out(dir / "plan.json", std::ios::binary | std::ios::trunc);
  if (!plan_out) throw IoError("cannot write " + (dir / "plan.json").string());
  plan_out << plan_to_json(bc).dump(2) << '\n';
  if (!plan_out) throw IoError("write failed for plan.json");
}

BalancedCorpus load_balanced(const std::filesystem::path& dir, const CorpusSpec& corpus) {
  BalancedCorpus bc;
  bc.plan = plan(corpus);

  std::ifstream plan_in(dir / "plan.json");
  if (!plan_in) throw IoError("cannot open " + (dir / "plan.json").string());
  nlohmann::json pj;
  try {
    pj = nlohmann::json::parse(plan_in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError((dir / "plan.json").string(), 0, e.what());
  }
  bc.seed = pj.at("seed").get<std::uint64_t>();
  bc.stratified = pj.value("stratified", false);
  if (pj.at("n_star_star").get<std::size_t>() != bc.plan.target ||
      pj.at("stage1").size() != bc.plan.stage1.size()) {
    throw ValidationError("plan.json does not match the corpus");
  }
  for (std::size_t i = 0; i < bc.plan.stage1.size(); ++i) {
    const auto& row = pj["stage1"][i];
    const auto& s1 = bc.plan.stage1[i];
    if (row.at("dataset").get<std::string>() != s1.dataset ||
        row.at("source_count").get<std::size_t>() != s1.source_count ||
        row.at("replication").get<std::uint64_t>() != s1.replication) {
      throw ValidationError("plan.json stage1 entry " + std::to_string(i) +
                            " does not match the corpus");
    }
  }

  const auto lists = train_lists(corpus);
  std::vector<std::unordered_map<std::string, std::size_t>> index(lists.size());
  for (std::size_t d = 0; d < lists.size(); ++d) {
    for (std::size_t i = 0; i < lists[d]->size(); ++i) index[d].emplace((*lists[d])[i].id, i);
  }

  const auto path = dir / "balanced.jsonl";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    auto language = parse_language(obj.at("language").get<std::string>());
    if (!language) throw ParseError(path.string(), line_no, "unknown language");
    std::size_t d = bc.plan.dataset_index(*language, obj.at("dataset").get<std::string>());
    auto it = index[d].find(obj.at("id").get<std::string>());
    if (it == index[d].end()) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": id not in the source train split");
    }
    std::uint64_t copy = obj.at("copy_index").get<std::uint64_t>();
    std::uint64_t r = bc.plan.stage1[d].replication;
    bc.per_language[*language].push_back({d, it->second, copy % r, copy / r});
  }
  return bc;
}

}  // namespace lion
