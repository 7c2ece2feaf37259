// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hbft/bloom.hpp"
#include "hbft/mrsh.hpp"

namespace hbft {

enum class TreeMode : std::uint32_t {
  /// Each level gets the same memory; a node is half the size of its parent.
  kVariable = 0,
  /// Every node has the root's size; inner nodes are OR-merged from leaves.
  kFixed = 1,
};

std::string_view to_string(TreeMode mode) noexcept;
/// Accepts "variable" or "fixed"; throws ConfigError otherwise.
TreeMode parse_tree_mode(std::string_view text);

inline constexpr std::uint64_t kGiB = std::uint64_t{1} << 30;
inline constexpr std::uint32_t kDefaultMinRun = 4;

struct TreeConfig {
  TreeMode mode = TreeMode::kVariable;
  std::uint64_t memory_budget = 10 * kGiB;
  std::uint64_t leaf_count = 1;
  std::uint32_t min_run = kDefaultMinRun;

  /// Throws ConfigError for zero leaves, budget or min_run.
  void validate() const;
};

/// Node geometry of a complete binary tree with a fixed number of leaves,
/// stored in heap order (children of i are 2i+1 and 2i+2).
class TreeLayout {
 public:
  TreeMode mode() const noexcept { return mode_; }
  std::uint64_t leaf_count() const noexcept { return leaf_count_; }
  std::uint64_t node_count() const noexcept { return 2 * leaf_count_ - 1; }
  std::uint64_t root_size() const noexcept { return root_size_; }
  unsigned max_depth() const noexcept { return max_depth_; }

  static unsigned depth(std::uint64_t node) noexcept;
  std::uint64_t size_bytes(std::uint64_t node) const noexcept;
  /// Size of any node at `depth`.
  std::uint64_t size_at_depth(unsigned depth) const noexcept;
  /// Sum of every node's size.
  std::uint64_t total_bytes() const noexcept;

  bool is_leaf(std::uint64_t node) const noexcept { return node + 1 >= leaf_count_; }
  std::uint64_t leaf_node(std::uint64_t leaf) const noexcept { return leaf_count_ - 1 + leaf; }
  std::uint64_t leaf_of(std::uint64_t node) const noexcept { return node - (leaf_count_ - 1); }
  static std::uint64_t parent(std::uint64_t node) noexcept { return (node - 1) / 2; }

 private:
  friend TreeLayout plan_layout(const TreeConfig& cfg);

  TreeMode mode_ = TreeMode::kVariable;
  std::uint64_t leaf_count_ = 1;
  std::uint64_t root_size_ = 0;
  unsigned max_depth_ = 0;
};

/// Size the tree under the memory budget.
///
///   variable: r = 2^floor(log2(u / (log2(n) + 1))), node at depth d is r / 2^d
///   fixed:    r = 2^floor(log2(u / (2n - 1))), every node is r
///
/// Throws ConfigError when the smallest node would fall below 32 bytes.
TreeLayout plan_layout(const TreeConfig& cfg);

/// True iff `min_run` consecutive hashes (in order) are all contained in `node`.
/// A miss resets the run.
bool node_matches(const BloomFilter& node, std::span<const std::uint64_t> hashes,
                  std::uint32_t min_run) noexcept;

struct LeafScore {
  std::string file_id;
  Score score;

  friend bool operator==(const LeafScore&, const LeafScore&) = default;
};

/// Outcome of searching one query digest.
struct SearchReport {
  std::string query_id;
  std::vector<std::uint64_t> leaves_reached;
  std::vector<std::string> candidates;
  std::vector<LeafScore> scores;
  std::uint64_t nodes_probed = 0;
  std::uint64_t pairwise_comparisons = 0;
};

/// Hierarchical Bloom Filter Tree over a reference corpus.
///
/// Files are assigned to leaves round-robin. Variable-width trees insert each
/// chunk hash into the leaf and all its ancestors; fixed-width trees fill the
/// leaves only and build inner nodes in finalize(). Leaves keep the full
/// digests of their files for rescoring.
class HbftIndex {
 public:
  /// Plans the layout and allocates every node filter.
  explicit HbftIndex(const TreeConfig& cfg);

  const TreeConfig& config() const noexcept { return config_; }
  const TreeLayout& layout() const noexcept { return layout_; }

  /// Next leaf in round-robin order.
  std::uint64_t assign_leaf() noexcept;

  /// Index a digest under the next round-robin leaf; returns that leaf id.
  std::uint64_t insert_file(SimilarityDigest digest);

  /// OR-merge inner nodes bottom-up (fixed mode); no-op for variable trees.
  void finalize();
  bool finalized() const noexcept { return finalized_; }

  /// Depth-first search from the root. Requires a finalized index.
  SearchReport search(const SimilarityDigest& query, Score threshold,
                      std::uint32_t min_run) const;
  SearchReport search(const SimilarityDigest& query, Score threshold) const {
    return search(query, threshold, config_.min_run);
  }

  const BloomFilter& node(std::uint64_t i) const { return nodes_.at(i); }
  std::span<const SimilarityDigest> leaf_files(std::uint64_t leaf) const {
    return leaf_files_.at(leaf);
  }
  std::uint64_t file_count() const noexcept { return file_count_; }

  /// Snapshot of a finalized index: header, node filters, per-leaf digests.
  void write(std::ostream& out) const;
  static HbftIndex read(std::istream& in);

 private:
  HbftIndex() = default;

  TreeConfig config_;
  TreeLayout layout_;
  std::vector<BloomFilter> nodes_;
  std::vector<std::vector<SimilarityDigest>> leaf_files_;
  std::uint64_t cursor_ = 0;
  std::uint64_t file_count_ = 0;
  bool finalized_ = true;
};

}  // namespace hbft
