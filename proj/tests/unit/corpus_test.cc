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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.h"
#include "lion/error.h"

namespace lion {
namespace {

using testing::TempDir;

Utterance make_utt(std::string id, double duration, Language lang = Language::kEnglish,
                   std::string dataset = "D", Split split = Split::kTrain) {
  Utterance u;
  u.id = std::move(id);
  u.audio_path = "audio/" + u.id + ".wav";
  u.duration_s = duration;
  u.transcript_raw = "text " + u.id;
  u.language = lang;
  u.dataset = std::move(dataset);
  u.split = split;
  return u;
}

CorpusSpec corpus_of(std::initializer_list<Utterance> utts) {
  CorpusSpec c;
  for (const auto& u : utts) c.add(u);
  return c;
}

TEST(LoadManifest, ParsesFieldsAndKeepsUnknownOnes) {
  auto load = parse_manifest(
      R"({"id":"u1","audio_path":"a/u1.wav","duration_s":3.5,"text":"Hi!","language":"malay","dataset":"Fleurs","split":"test","speaker":"s9"})"
      "\n",
      "m.jsonl");
  ASSERT_EQ(load.corpus.size(), 1u);
  const auto& u = load.corpus.datasets.at({Language::kMalay, "Fleurs"})[Split::kTest].front();
  EXPECT_EQ(u.id, "u1");
  EXPECT_EQ(u.audio_path, "a/u1.wav");
  EXPECT_DOUBLE_EQ(u.duration_s, 3.5);
  EXPECT_EQ(u.transcript_raw, "Hi!");
  EXPECT_EQ(u.extra.at("speaker"), "s9");
  EXPECT_TRUE(load.warnings.empty());
}

TEST(LoadManifest, EmptyFileSucceedsWithWarning) {
  TempDir dir("manifest");
  testing::write_text(dir / "empty.jsonl", "");
  auto load = load_manifest(dir / "empty.jsonl");
  EXPECT_TRUE(load.corpus.datasets.empty());
  ASSERT_EQ(load.warnings.size(), 1u);
}

TEST(LoadManifest, NegativeDurationNamesTheLine) {
  const std::string content =
      R"({"id":"a","audio_path":"a","duration_s":1,"text":"","language":"tamil","dataset":"D","split":"train"})"
      "\n"
      R"({"id":"b","audio_path":"b","duration_s":-1,"text":"","language":"tamil","dataset":"D","split":"train"})"
      "\n";
  try {
    parse_manifest(content, "m.jsonl");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("m.jsonl:2"), std::string::npos) << e.what();
  }
}

TEST(LoadManifest, ZeroDurationRejected) {
  EXPECT_THROW(
      parse_manifest(
          R"({"id":"a","audio_path":"a","duration_s":0,"text":"","language":"tamil","dataset":"D","split":"train"})",
          "m"),
      ValidationError);
}

TEST(LoadManifest, DuplicateIdWithinDatasetSplitRejected) {
  const std::string line =
      R"({"id":"a","audio_path":"a","duration_s":1,"text":"","language":"english","dataset":"D","split":"train"})";
  EXPECT_THROW(parse_manifest(line + "\n" + line + "\n", "m"), ValidationError);
}

TEST(LoadManifest, SameIdInOtherSplitAllowed) {
  auto load = parse_manifest(
      R"({"id":"a","audio_path":"a","duration_s":1,"text":"","language":"english","dataset":"D","split":"train"})"
      "\n"
      R"({"id":"a","audio_path":"a","duration_s":1,"text":"","language":"english","dataset":"D","split":"test"})",
      "m");
  EXPECT_EQ(load.corpus.size(), 2u);
}

TEST(LoadManifest, UnknownEnumsAndBadJsonCarryLineNumbers) {
  try {
    parse_manifest(
        "\n"
        R"({"id":"a","audio_path":"a","duration_s":1,"text":"","language":"klingon","dataset":"D","split":"train"})",
        "m");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_manifest(
        R"({"id":"a","audio_path":"a","duration_s":1,"text":"","language":"english","dataset":"D","split":"dev"})",
        "m");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    parse_manifest("{not json", "m");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(parse_manifest(R"({"id":"a"})", "m"), ParseError);
}

TEST(LoadManifest, RejectsTrailingDataAndInvalidUtf8) {
  const std::string line =
      R"({"id":"a","audio_path":"a","duration_s":1.5,"text":"x","language":"malay","dataset":"D","split":"test"})";
  EXPECT_THROW(parse_manifest(line + " {}", "m"), ParseError);
  std::string bad = line;
  bad.replace(bad.find("\"x\"") + 1, 1, "\xC3\x28");
  EXPECT_THROW(parse_manifest(bad, "m"), ParseError);
  EXPECT_THROW(parse_manifest(R"({"id":5,"audio_path":"a","duration_s":1,"text":"","language":"malay","dataset":"D","split":"test"})", "m"),
               ParseError);
  EXPECT_THROW(parse_manifest(R"({"id":"a","audio_path":"a","duration_s":"1","text":"","language":"malay","dataset":"D","split":"test"})", "m"),
               ParseError);
}

TEST(LoadManifest, DurationsParseToNearestDouble) {
  auto load = parse_manifest(
      R"({"id":"a","audio_path":"a","duration_s":0.1,"text":"","language":"malay","dataset":"D","split":"test","n":18446744073709551615,"neg":-3,"f":2.5e-3,"nil":null})",
      "m");
  const auto& u = load.corpus.datasets.begin()->second[Split::kTest][0];
  EXPECT_EQ(u.duration_s, 0.1);
  EXPECT_EQ(u.extra.at("n").get<std::uint64_t>(), 18446744073709551615ULL);
  EXPECT_EQ(u.extra.at("neg").get<std::int64_t>(), -3);
  EXPECT_EQ(u.extra.at("f").get<double>(), 2.5e-3);
  EXPECT_TRUE(u.extra.at("nil").is_null());
}

TEST(LoadManifest, LibrispeechTrainFixture) {
  auto rows = testing::load_dataset_sizes(testing::data_dir() / "dataset_sizes.csv");
  ASSERT_EQ(rows.front().dataset, "Librispeech");
  TempDir dir("libri");
  testing::FixtureOptions opts;
  opts.train_only = true;
  opts.overlength_extras = false;
  testing::write_corpus_fixture({rows.front()}, dir.path(), opts);
  auto load = load_manifest(dir / "english_librispeech.jsonl");
  auto stats = compute_stats(load.corpus);
  const auto* row = stats.find(Language::kEnglish, "Librispeech");
  ASSERT_NE(row, nullptr);
  EXPECT_EQ((*row)[Split::kTrain].samples, 28539u);
  EXPECT_NEAR((*row)[Split::kTrain].hours(), 100.59, 0.01);
}

TEST(FilterByDuration, StrictlyLongerDropped) {
  auto c = corpus_of({make_utt("a", 31.2), make_utt("b", 30.0)});
  auto r = filter_by_duration(c, 30.0);
  EXPECT_EQ(r.dropped, 1u);
  ASSERT_EQ(r.corpus.size(), 1u);
  EXPECT_EQ(r.corpus.datasets.begin()->second[Split::kTrain].front().id, "b");
}

TEST(FilterByDuration, CountsAndOrder) {
  auto c = corpus_of({make_utt("x", 5), make_utt("y", 45), make_utt("z", 29)});
  auto r = filter_by_duration(c);
  EXPECT_EQ(r.dropped, 1u);
  const auto& kept = r.corpus.datasets.begin()->second[Split::kTrain];
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].id, "x");
  EXPECT_EQ(kept[1].id, "z");
  EXPECT_EQ(r.dropped, c.size() - r.corpus.size());
}

TEST(FilterByDuration, RejectsNonPositiveCutoff) {
  EXPECT_THROW(filter_by_duration(CorpusSpec{}, 0.0), PreconditionError);
}

// Random corpora shared by the property tests below.
CorpusSpec random_corpus(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> dur(0.1, 60.0);
  std::uniform_int_distribution<int> lang(0, 3), split(0, 2), ds(0, 2);
  CorpusSpec c;
  for (std::size_t i = 0; i < n; ++i) {
    auto u = make_utt("u" + std::to_string(i), dur(gen), static_cast<Language>(lang(gen)),
                      "ds" + std::to_string(ds(gen)), static_cast<Split>(split(gen)));
    u.transcript_raw = "Text \"quoted\" ünïcødé 你好 " + std::to_string(i);
    if (i % 3 == 0) u.extra["speaker"] = "spk" + std::to_string(i % 7);
    if (i % 5 == 0) u.extra["meta"] = {{"snr", 12.5}, {"tags", {"a", "b"}}};
    c.add(std::move(u));
  }
  return c;
}

TEST(FilterByDuration, IdempotentProperty) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = random_corpus(gen, 60);
    double max_s = 1.0 + static_cast<double>(trial);
    auto once = filter_by_duration(c, max_s);
    auto twice = filter_by_duration(once.corpus, max_s);
    EXPECT_EQ(once.corpus, twice.corpus);
    EXPECT_EQ(twice.dropped, 0u);
  }
}

TEST(SaveManifest, RoundTripProperty) {
  std::mt19937_64 gen(12);
  TempDir dir("roundtrip");
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_corpus(gen, 40);
    save_manifest(c, dir / "m.jsonl");
    auto back = load_manifest(dir / "m.jsonl");
    EXPECT_EQ(back.corpus, c);
  }
}

TEST(ComputeStats, UnitConversion) {
  auto stats = compute_stats(corpus_of({make_utt("a", 3600.0)}));
  ASSERT_EQ(stats.rows.size(), 1u);
  EXPECT_EQ(stats.rows[0][Split::kTrain].samples, 1u);
  EXPECT_DOUBLE_EQ(stats.rows[0][Split::kTrain].hours(), 1.0);
  EXPECT_NE(render_stats_csv(stats).find("english,D,train,1,1.00"), std::string::npos);
}

TEST(ComputeStats, DatasetRowsSumToLanguageSubtotal) {
  auto stats = compute_stats(corpus_of({make_utt("a", 10, Language::kTamil, "A"),
                                        make_utt("b", 20, Language::kTamil, "B"),
                                        make_utt("c", 30, Language::kTamil, "B", Split::kTest)}));
  const auto& sub = stats.language_subtotals.at(Language::kTamil);
  EXPECT_EQ(sub.total.samples, 3u);
  EXPECT_DOUBLE_EQ(sub.total.seconds, 60.0);
  EXPECT_EQ(sub[Split::kTrain].samples, 2u);
}

TEST(ComputeStats, OrderIsLanguageThenDatasetName) {
  auto stats = compute_stats(corpus_of({make_utt("a", 1, Language::kMalay, "A"),
                                        make_utt("b", 1, Language::kEnglish, "Z"),
                                        make_utt("c", 1, Language::kEnglish, "B"),
                                        make_utt("d", 1, Language::kMandarin, "A")}));
  std::vector<std::string> order;
  for (const auto& r : stats.rows) order.push_back(std::string(to_string(r.language)) + "/" + r.dataset);
  EXPECT_EQ(order, (std::vector<std::string>{"english/B", "english/Z", "mandarin/A", "malay/A"}));
}

TEST(ComputeStats, TotalsEqualRowSumsExactly) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto stats = compute_stats(random_corpus(gen, 200));
    std::array<StatsCell, 3> cols{};
    StatsCell grand;
    for (const auto& row : stats.rows) {
      for (int s = 0; s < 3; ++s) cols[s] += row.per_split[s];
      grand += row.total;
    }
    for (int s = 0; s < 3; ++s) {
      EXPECT_EQ(cols[s].samples, stats.split_totals[s].samples);
      EXPECT_EQ(cols[s].seconds, stats.split_totals[s].seconds);
    }
    EXPECT_EQ(grand.samples, stats.grand_total.samples);
    EXPECT_EQ(grand.seconds, stats.grand_total.seconds);
  }
}

TEST(ComputeStats, MarkdownLayout) {
  auto md = render_stats_markdown(compute_stats(corpus_of({make_utt("a", 7200, Language::kEnglish, "NSC")})));
  EXPECT_NE(md.find("| Lang. | Dataset | Train S | Train H |"), std::string::npos);
  EXPECT_NE(md.find("| English | NSC | 1 | 2.00 |"), std::string::npos);
  EXPECT_NE(md.find("| **Total** |"), std::string::npos);
}

}  // namespace
}  // namespace lion
