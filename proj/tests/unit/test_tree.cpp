// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "hbft/error.hpp"
#include "hbft/tree.hpp"
#include "test_support.hpp"

namespace hbft {
namespace {

using testing::random_bytes;

constexpr std::uint64_t kMiB = std::uint64_t{1} << 20;
constexpr std::uint64_t kKiB = std::uint64_t{1} << 10;

std::vector<std::uint64_t> seq(std::uint64_t start, std::size_t n) {
  std::vector<std::uint64_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (start + i) * 0x9E3779B97F4A7C15ULL;
  return v;
}

TEST(Layout, VariableTenGiB) {
  const TreeLayout l = plan_layout({TreeMode::kVariable, 10 * kGiB, 48384, 4});
  EXPECT_EQ(l.root_size(), 512 * kMiB);
  EXPECT_EQ(l.max_depth(), 16U);
  EXPECT_EQ(l.size_at_depth(l.max_depth()), 8 * kKiB);
  EXPECT_EQ(l.size_bytes(l.node_count() - 1), 8 * kKiB);
  EXPECT_LE(l.total_bytes(), 10 * kGiB);
}

TEST(Layout, FixedTenGiB) {
  const TreeLayout l = plan_layout({TreeMode::kFixed, 10 * kGiB, 48384, 4});
  EXPECT_EQ(l.root_size(), 64 * kKiB);
  EXPECT_EQ(l.size_bytes(0), 64 * kKiB);
  EXPECT_EQ(l.size_bytes(l.node_count() - 1), 64 * kKiB);
  EXPECT_EQ(l.total_bytes(), (2 * 48384 - 1) * 64 * kKiB);
}

TEST(Layout, SingleLeaf) {
  const TreeLayout l = plan_layout({TreeMode::kVariable, 1024, 1, 4});
  EXPECT_EQ(l.node_count(), 1U);
  EXPECT_EQ(l.root_size(), 1024U);
  EXPECT_TRUE(l.is_leaf(0));
}

TEST(Layout, HeapShape) {
  const TreeLayout l = plan_layout({TreeMode::kVariable, kMiB, 5, 4});
  EXPECT_EQ(l.node_count(), 9U);
  EXPECT_EQ(l.leaf_node(0), 4U);
  EXPECT_EQ(l.leaf_of(8), 4U);
  EXPECT_EQ(TreeLayout::parent(8), 3U);
  EXPECT_EQ(TreeLayout::depth(0), 0U);
  EXPECT_EQ(TreeLayout::depth(4), 2U);
  EXPECT_EQ(TreeLayout::depth(8), 3U);
  EXPECT_FALSE(l.is_leaf(3));
  EXPECT_TRUE(l.is_leaf(4));
}

TEST(Layout, RejectsTooSmallBudget) {
  EXPECT_THROW(plan_layout({TreeMode::kVariable, 100, 64, 4}), ConfigError);
  EXPECT_THROW(plan_layout({TreeMode::kFixed, 31, 1, 4}), ConfigError);
  EXPECT_THROW(plan_layout({TreeMode::kVariable, kMiB, 0, 4}), ConfigError);
  EXPECT_THROW(plan_layout({TreeMode::kVariable, kMiB, 4, 0}), ConfigError);
}

TEST(TreeMode, ParseRoundTrip) {
  EXPECT_EQ(parse_tree_mode("variable"), TreeMode::kVariable);
  EXPECT_EQ(parse_tree_mode("fixed"), TreeMode::kFixed);
  EXPECT_EQ(to_string(TreeMode::kFixed), "fixed");
  EXPECT_THROW(parse_tree_mode("wide"), ConfigError);
}

TEST(Index, RoundRobinLeaves) {
  HbftIndex four({TreeMode::kVariable, kMiB, 4, 4});
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_EQ(four.assign_leaf(), i);
  EXPECT_EQ(four.assign_leaf(), 0U);

  HbftIndex one({TreeMode::kVariable, kMiB, 1, 4});
  EXPECT_EQ(one.assign_leaf(), 0U);
  EXPECT_EQ(one.assign_leaf(), 0U);
}

TEST(NodeMatches, RunRules) {
  BloomFilter f(4096);
  const auto hits = seq(1, 10);
  for (auto h : hits) f.insert_hash(h);
  EXPECT_TRUE(node_matches(f, hits, 4));
  EXPECT_FALSE(node_matches(f, std::span(hits).first(3), 4));

  const std::uint64_t miss = 0xffffffffffffULL * 7;
  ASSERT_FALSE(f.contains_hash(miss));
  const std::vector<std::uint64_t> broken{hits[0], hits[1], hits[2], miss, hits[3], hits[4], hits[5]};
  EXPECT_FALSE(node_matches(f, broken, 4));
  EXPECT_TRUE(node_matches(f, broken, 3));
  EXPECT_TRUE(node_matches(f, broken, 1));
}

TEST(Index, VariableInsertReachesRoot) {
  HbftIndex idx({TreeMode::kVariable, kMiB, 4, 4});
  const auto h = seq(100, 20);
  const auto leaf = idx.insert_file(digest_from_hashes("a", 1, h));
  const auto node = idx.layout().leaf_node(leaf);
  for (auto x : h) {
    EXPECT_TRUE(idx.node(node).contains_hash(x));
    EXPECT_TRUE(idx.node(TreeLayout::parent(node)).contains_hash(x));
    EXPECT_TRUE(idx.node(0).contains_hash(x));
  }
}

TEST(Index, FixedDefersParentsToFinalize) {
  HbftIndex idx({TreeMode::kFixed, 3 * 1024, 2, 4});
  idx.insert_file(digest_from_hashes("a", 1, seq(1, 30)));
  idx.insert_file(digest_from_hashes("b", 1, seq(500, 30)));
  EXPECT_FALSE(idx.finalized());
  EXPECT_EQ(idx.node(0).popcount(), 0U);
  EXPECT_THROW(idx.search(digest_from_hashes("q", 1, seq(1, 30)), Score{0}), Error);

  idx.finalize();
  BloomFilter merged = idx.node(1);
  merged.merge_from(idx.node(2));
  EXPECT_EQ(idx.node(0), merged);
  const BloomFilter before = idx.node(0);
  idx.finalize();
  EXPECT_EQ(idx.node(0), before);
}

TEST(Search, FindsIndexedFileWithFullScore) {
  HbftIndex idx({TreeMode::kVariable, 4 * kMiB, 8, 4});
  std::vector<SimilarityDigest> files;
  for (int i = 0; i < 16; ++i) {
    files.push_back(make_digest("f" + std::to_string(i), random_bytes(i, 20000)));
    idx.insert_file(files.back());
  }
  idx.finalize();
  for (int i = 0; i < 16; ++i) {
    const auto r = idx.search(files[i], Score{20});
    EXPECT_TRUE(std::find(r.leaves_reached.begin(), r.leaves_reached.end(),
                          static_cast<std::uint64_t>(i % 8)) != r.leaves_reached.end());
    const auto hit = std::find_if(r.scores.begin(), r.scores.end(),
                                  [&](const LeafScore& s) { return s.file_id == files[i].file_id; });
    ASSERT_NE(hit, r.scores.end());
    EXPECT_EQ(hit->score.value, 100);
    std::uint64_t cached = 0;
    for (auto leaf : r.leaves_reached) cached += idx.leaf_files(leaf).size();
    EXPECT_EQ(r.pairwise_comparisons, cached);
  }
}

TEST(Search, RootMissProbesOnlyRoot) {
  HbftIndex idx({TreeMode::kVariable, 4 * kMiB, 8, 4});
  for (int i = 0; i < 8; ++i) idx.insert_file(make_digest("f", random_bytes(i, 5000)));
  idx.finalize();
  const auto r = idx.search(make_digest("q", random_bytes(999, 50000)), Score{0});
  EXPECT_TRUE(r.leaves_reached.empty());
  EXPECT_EQ(r.pairwise_comparisons, 0U);
  EXPECT_EQ(r.nodes_probed, 1U);
}

TEST(Index, SnapshotRoundTrip) {
  for (TreeMode mode : {TreeMode::kVariable, TreeMode::kFixed}) {
    HbftIndex idx({mode, 256 * kKiB, 5, 6});
    for (int i = 0; i < 11; ++i) {
      idx.insert_file(make_digest("f" + std::to_string(i), random_bytes(i, 8000)));
    }
    idx.finalize();
    std::stringstream buf;
    idx.write(buf);
    const HbftIndex back = HbftIndex::read(buf);
    EXPECT_EQ(back.config().mode, mode);
    EXPECT_EQ(back.config().min_run, 6U);
    EXPECT_EQ(back.file_count(), 11U);
    for (std::uint64_t n = 0; n < idx.layout().node_count(); ++n) EXPECT_EQ(back.node(n), idx.node(n));
    for (std::uint64_t leaf = 0; leaf < 5; ++leaf) {
      ASSERT_EQ(back.leaf_files(leaf).size(), idx.leaf_files(leaf).size());
      for (std::size_t k = 0; k < idx.leaf_files(leaf).size(); ++k) {
        EXPECT_EQ(back.leaf_files(leaf)[k].hashes, idx.leaf_files(leaf)[k].hashes);
      }
    }
    const auto q = idx.leaf_files(2)[0];
    EXPECT_EQ(back.search(q, Score{20}).scores, idx.search(q, Score{20}).scores);
  }
}

TEST(Index, SnapshotRejectsGarbage) {
  std::istringstream in(std::string("HBFT-XX\0junk", 12));
  EXPECT_THROW(HbftIndex::read(in), FormatError);
}

}  // namespace
}  // namespace hbft
