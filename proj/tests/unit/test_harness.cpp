// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hbft/error.hpp"
#include "hbft/harness.hpp"
#include "hbft/io.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace hbft::harness {
namespace {

constexpr std::uint64_t kMiB = std::uint64_t{1} << 20;

TEST(Corpus, DeterministicAndBounded) {
  const CorpusSpec spec{1, 100, 4 * 1024, 64 * 1024};
  const Corpus a = generate_corpus(spec);
  const Corpus b = generate_corpus(spec, 3);
  ASSERT_EQ(a.size(), 100U);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].bytes, b[i].bytes);
    EXPECT_GE(a[i].bytes.size(), spec.size_min);
    EXPECT_LE(a[i].bytes.size(), spec.size_max);
  }
  EXPECT_EQ(a[7].name, "f000007.bin");

  CorpusSpec other = spec;
  other.seed = 2;
  EXPECT_NE(generate_corpus(other)[0].bytes, a[0].bytes);
}

TEST(Corpus, RejectsInvertedBounds) {
  EXPECT_THROW(generate_corpus(CorpusSpec{1, 3, 100, 10}), ConfigError);
}

TEST(Corpus, MixedModelSharesContent) {
  CorpusSpec spec{5, 40, 32 * 1024, 64 * 1024, ContentModel::kMixedRedundancy};
  const auto digests = digest_corpus(generate_corpus(spec), DigestParams{});
  int related = 0;
  for (std::size_t i = 1; i < digests.size(); ++i) {
    if (compare_digests(digests[0], digests[i]).value > 0) ++related;
  }
  EXPECT_GT(related, 0);
}

TEST(Corpus, WritesToDisk) {
  testing::TempDir dir("corpus");
  generate_corpus(CorpusSpec{3, 4, 1000, 2000}, dir.path() / "c");
  const auto files = list_files(dir.path() / "c");
  ASSERT_EQ(files.size(), 4U);
  EXPECT_EQ(files[0].filename(), "f000000.bin");
  EXPECT_EQ(read_file(files[2]), generate_corpus(CorpusSpec{3, 4, 1000, 2000})[2].bytes);
}

TEST(CraftedFile, HasExactChunkCount) {
  for (std::size_t n : {1U, 3U, 7U, 20U}) {
    const auto bytes = craft_chunked_file(n, n);
    EXPECT_EQ(chunk_stream(bytes).chunks.size(), n) << n;
  }
}

TEST(Plant, HitsEachBand) {
  const auto base = testing::random_bytes(77, 64 * 1024);
  const auto d = make_digest("b", base);
  for (auto [low, high] : {std::pair{80, 100}, {60, 79}, {40, 59}, {20, 39}}) {
    const PlantResult r = plant_similar(base, low, high, 1234);
    EXPECT_GE(r.score.value, low);
    EXPECT_LE(r.score.value, high);
    EXPECT_EQ(compare_digests(d, make_digest("m", r.bytes)), r.score);
    EXPECT_EQ(r.bytes.size(), base.size());
  }
  const PlantResult same = plant_similar(base, 100, 100, 1);
  EXPECT_EQ(same.bytes, base);
  EXPECT_EQ(same.blocks_replaced, 0U);
}

TEST(Plant, RejectsTinyBase) {
  const auto base = testing::random_bytes(1, 500);
  EXPECT_THROW(plant_similar(base, 20, 39, 1), PlantingError);
}

TEST(Plant, SpecValidation) {
  PlantSpec bad;
  bad.similar_bands = {{50, 70, 1}, {60, 80, 1}};
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_NO_THROW(PlantSpec{}.validate());
}

TEST(Plant, EvidenceLayout) {
  const Corpus illegal = generate_corpus(CorpusSpec{9, 30, 16 * 1024, 48 * 1024, {}, "r"});
  const Corpus disk = generate_corpus(CorpusSpec{10, 20, 4 * 1024, 16 * 1024, {}, "d"});
  PlantSpec spec{5, {{80, 100, 2}, {20, 39, 2}}};
  const PlantedDisk pd = plant_evidence(illegal, disk, spec, 42);
  EXPECT_EQ(pd.disk.size(), 29U);
  EXPECT_EQ(pd.plants.size(), 9U);
  EXPECT_EQ(pd.plants[0].disk_name, "plant_identical_000.bin");
  EXPECT_EQ(pd.plants.back().disk_name, "plant_similar_020_039_01.bin");
  std::set<std::string> sources;
  for (const auto& p : pd.plants) sources.insert(p.source_name);
  EXPECT_EQ(sources.size(), pd.plants.size());

  PlantSpec too_many{40, {}};
  EXPECT_THROW(plant_evidence(illegal, disk, too_many, 1), PlantingError);
}

TEST(Experiment, SelfRecallSmall) {
  Corpus corpus = generate_corpus(CorpusSpec{4, 60, 4 * 1024, 16 * 1024});
  corpus.push_back({"tiny.bin", craft_chunked_file(8, 5)});
  const std::uint32_t runs[] = {4, 8};
  const auto r = run_self_recall(corpus, TreeConfig{TreeMode::kVariable, 16 * kMiB, 0, 4}, runs);
  ASSERT_EQ(r.reports.size(), 2U);
  EXPECT_DOUBLE_EQ(r.reports[0].recall, 1.0);
  EXPECT_LT(r.reports[1].recall, 1.0);
  EXPECT_NE(std::find(r.missed[1].begin(), r.missed[1].end(), "tiny.bin"), r.missed[1].end());
  EXPECT_EQ(r.reports[0].config.leaf_count, corpus.size());
  EXPECT_EQ(r.reports[0].baseline_comparisons, 61U * 61U);

  const auto doc = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(doc["experiment"], "self-recall");
  EXPECT_EQ(doc["reports"].size(), 2U);
  EXPECT_EQ(doc["observations"]["missed"][1]["files"][0], "tiny.bin");
}

TEST(Experiment, DisjointSmall) {
  const Corpus a = generate_corpus(CorpusSpec{21, 50, 4 * 1024, 16 * 1024, {}, "a"});
  const Corpus b = generate_corpus(CorpusSpec{22, 80, 4 * 1024, 16 * 1024, {}, "b"});
  const auto r = run_disjoint_study(a, b, TreeConfig{TreeMode::kVariable, 16 * kMiB, 0, 4});
  ASSERT_EQ(r.reports.size(), 4U);
  for (const auto& rep : r.reports) {
    EXPECT_EQ(rep.baseline_comparisons, 4000U);
    EXPECT_LT(rep.tree_comparisons, rep.baseline_comparisons);
  }
  EXPECT_FALSE(r.faster_direction.empty());
  const auto doc = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(doc["reports"][3]["config"]["mode"], "fixed");

  const std::string csv = to_csv(r.reports);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Experiment, PlantedSmall) {
  const Corpus illegal = generate_corpus(CorpusSpec{31, 40, 16 * 1024, 48 * 1024, {}, "r"});
  const Corpus disk = generate_corpus(CorpusSpec{32, 60, 4 * 1024, 32 * 1024, {}, "d"});
  const PlantSpec spec{5, {{80, 100, 2}, {40, 59, 2}}};
  const PlantedDisk pd = plant_evidence(illegal, disk, spec, 7);
  const auto r = run_planted(illegal, pd, spec, TreeConfig{TreeMode::kVariable, 16 * kMiB, 0, 4});
  EXPECT_DOUBLE_EQ(r.report.recall, 1.0);
  ASSERT_EQ(r.report.similar_recall.size(), 2U);
  EXPECT_DOUBLE_EQ(r.report.similar_recall[0].recall, 1.0);
  EXPECT_EQ(r.outcomes.size(), 9U);
  for (const auto& o : r.outcomes) {
    if (o.plant.identical) {
      ASSERT_TRUE(o.rescored.has_value());
      EXPECT_EQ(o.rescored->value, 100);
    }
  }
  EXPECT_GE(r.baseline_matches, 9U);
  const auto doc = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(doc["observations"]["plants"].size(), 9U);
  EXPECT_TRUE(doc["observations"].contains("tree_to_baseline_time_ratio"));
}

}  // namespace
}  // namespace hbft::harness
