// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include "hbft/tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "hbft/error.hpp"

namespace hbft {

namespace {

constexpr std::string_view kIndexMagic{"HBFT-IX\0", 8};
constexpr std::uint32_t kIndexVersion = 1;
constexpr unsigned kMaxLog2NodeBytes = 40;

// Largest e with 2^e * divisor <= budget, or -1 if none.
int largest_power_fitting(std::uint64_t budget, long double divisor) {
  int e = -1;
  while (e + 1 <= static_cast<int>(kMaxLog2NodeBytes) &&
         std::ldexp(divisor, e + 1) <= static_cast<long double>(budget)) {
    ++e;
  }
  return e;
}

}  // namespace

std::string_view to_string(TreeMode mode) noexcept {
  return mode == TreeMode::kFixed ? "fixed" : "variable";
}

TreeMode parse_tree_mode(std::string_view text) {
  if (text == "variable") return TreeMode::kVariable;
  if (text == "fixed") return TreeMode::kFixed;
  throw ConfigError("unknown tree mode '" + std::string(text) + "' (expected variable|fixed)");
}

void TreeConfig::validate() const {
  if (leaf_count == 0) throw ConfigError("leaf count must be at least 1");
  if (memory_budget == 0) throw ConfigError("memory budget must be positive");
  if (min_run == 0) throw ConfigError("min_run must be at least 1");
  if (mode != TreeMode::kVariable && mode != TreeMode::kFixed) {
    throw ConfigError("invalid tree mode");
  }
}

unsigned TreeLayout::depth(std::uint64_t node) noexcept {
  return static_cast<unsigned>(std::bit_width(node + 1)) - 1;
}

std::uint64_t TreeLayout::size_at_depth(unsigned d) const noexcept {
  return mode_ == TreeMode::kFixed ? root_size_ : root_size_ >> d;
}

std::uint64_t TreeLayout::size_bytes(std::uint64_t node) const noexcept {
  return size_at_depth(depth(node));
}

std::uint64_t TreeLayout::total_bytes() const noexcept {
  std::uint64_t remaining = node_count();
  std::uint64_t total = 0;
  for (unsigned d = 0; remaining > 0; ++d) {
    const std::uint64_t at_depth = std::min(remaining, std::uint64_t{1} << d);
    total += at_depth * size_at_depth(d);
    remaining -= at_depth;
  }
  return total;
}

TreeLayout plan_layout(const TreeConfig& cfg) {
  cfg.validate();
  TreeLayout layout;
  layout.mode_ = cfg.mode;
  layout.leaf_count_ = cfg.leaf_count;
  layout.max_depth_ = TreeLayout::depth(layout.node_count() - 1);

  long double divisor;
  if (cfg.mode == TreeMode::kVariable) {
    divisor = std::log2(static_cast<long double>(cfg.leaf_count)) + 1.0L;
  } else {
    divisor = static_cast<long double>(2 * cfg.leaf_count - 1);
  }
  const int root_log2 = largest_power_fitting(cfg.memory_budget, divisor);
  const int leaf_log2 = cfg.mode == TreeMode::kVariable
                            ? root_log2 - static_cast<int>(layout.max_depth_)
                            : root_log2;
  if (root_log2 < 0 || leaf_log2 < 5) {
    throw ConfigError("memory budget of " + std::to_string(cfg.memory_budget) +
                      " bytes is too small for " + std::to_string(cfg.leaf_count) +
                      " leaves (smallest node would be under 32 bytes)");
  }
  layout.root_size_ = std::uint64_t{1} << root_log2;
  return layout;
}

bool node_matches(const BloomFilter& node, std::span<const std::uint64_t> hashes,
                  std::uint32_t min_run) noexcept {
  if (min_run == 0) return true;
  std::uint32_t run = 0;
  for (std::uint64_t h : hashes) {
    if (node.contains_hash(h)) {
      if (++run >= min_run) return true;
    } else {
      run = 0;
    }
  }
  return false;
}

HbftIndex::HbftIndex(const TreeConfig& cfg) : config_(cfg), layout_(plan_layout(cfg)) {
  nodes_.reserve(layout_.node_count());
  for (std::uint64_t i = 0; i < layout_.node_count(); ++i) {
    nodes_.emplace_back(layout_.size_bytes(i));
  }
  leaf_files_.resize(layout_.leaf_count());
}

std::uint64_t HbftIndex::assign_leaf() noexcept {
  const std::uint64_t leaf = cursor_ % layout_.leaf_count();
  ++cursor_;
  return leaf;
}

std::uint64_t HbftIndex::insert_file(SimilarityDigest digest) {
  const std::uint64_t leaf = assign_leaf();
  std::uint64_t node = layout_.leaf_node(leaf);
  if (config_.mode == TreeMode::kVariable) {
    while (true) {
      BloomFilter& f = nodes_[node];
      for (std::uint64_t h : digest.hashes) f.insert_hash(h);
      if (node == 0) break;
      node = TreeLayout::parent(node);
    }
  } else {
    BloomFilter& f = nodes_[node];
    for (std::uint64_t h : digest.hashes) f.insert_hash(h);
    finalized_ = false;
  }
  leaf_files_[leaf].push_back(std::move(digest));
  ++file_count_;
  return leaf;
}

void HbftIndex::finalize() {
  if (config_.mode == TreeMode::kFixed) {
    const std::uint64_t inner = layout_.leaf_count() - 1;
    for (std::uint64_t i = inner; i-- > 0;) {
      BloomFilter merged(layout_.size_bytes(i));
      merged.merge_from(nodes_[2 * i + 1]);
      merged.merge_from(nodes_[2 * i + 2]);
      nodes_[i] = std::move(merged);
    }
  }
  finalized_ = true;
}

SearchReport HbftIndex::search(const SimilarityDigest& query, Score threshold,
                               std::uint32_t min_run) const {
  if (!finalized_) throw Error("index must be finalized before searching");
  if (min_run == 0) throw ConfigError("min_run must be at least 1");

  SearchReport report;
  report.query_id = query.file_id;
  std::vector<std::uint64_t> stack{0};
  while (!stack.empty()) {
    const std::uint64_t node = stack.back();
    stack.pop_back();
    ++report.nodes_probed;
    if (!node_matches(nodes_[node], query.hashes, min_run)) continue;
    if (layout_.is_leaf(node)) {
      report.leaves_reached.push_back(layout_.leaf_of(node));
      continue;
    }
    stack.push_back(2 * node + 2);
    stack.push_back(2 * node + 1);
  }

  for (std::uint64_t leaf : report.leaves_reached) {
    for (const SimilarityDigest& cached : leaf_files_[leaf]) {
      report.candidates.push_back(cached.file_id);
      ++report.pairwise_comparisons;
      const Score s = compare_digests(query, cached);
      if (s >= threshold) report.scores.push_back({cached.file_id, s});
    }
  }
  return report;
}

void HbftIndex::write(std::ostream& out) const {
  if (!finalized_) throw Error("index must be finalized before it is saved");
  detail::write_magic(out, kIndexMagic);
  detail::write_le<std::uint32_t>(out, kIndexVersion);
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(config_.mode));
  detail::write_le<std::uint64_t>(out, config_.memory_budget);
  detail::write_le<std::uint64_t>(out, config_.leaf_count);
  detail::write_le<std::uint32_t>(out, config_.min_run);
  detail::write_le<std::uint64_t>(out, layout_.node_count());
  for (const BloomFilter& f : nodes_) f.write(out);
  for (const auto& files : leaf_files_) {
    detail::write_le<std::uint64_t>(out, files.size());
    for (const SimilarityDigest& d : files) d.write(out);
  }
  detail::check_stream(out);
}

HbftIndex HbftIndex::read(std::istream& in) {
  detail::expect_magic(in, kIndexMagic, "hbft index");
  const auto version = detail::read_le<std::uint32_t>(in);
  if (version != kIndexVersion) {
    throw FormatError("unsupported index version " + std::to_string(version));
  }
  TreeConfig cfg;
  const auto mode = detail::read_le<std::uint32_t>(in);
  if (mode > 1) throw FormatError("unknown tree mode in index header");
  cfg.mode = static_cast<TreeMode>(mode);
  cfg.memory_budget = detail::read_le<std::uint64_t>(in);
  cfg.leaf_count = detail::read_le<std::uint64_t>(in);
  cfg.min_run = detail::read_le<std::uint32_t>(in);
  const auto node_count = detail::read_le<std::uint64_t>(in);

  TreeLayout layout;
  try {
    layout = plan_layout(cfg);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("index header: ") + e.what());
  }
  if (node_count != layout.node_count()) throw FormatError("index node count mismatch");

  HbftIndex idx;
  idx.config_ = cfg;
  idx.layout_ = layout;
  idx.nodes_.reserve(node_count);
  for (std::uint64_t i = 0; i < node_count; ++i) {
    BloomFilter f = BloomFilter::read(in);
    if (f.size_bytes() != layout.size_bytes(i)) {
      throw FormatError("index node " + std::to_string(i) + " has the wrong size");
    }
    idx.nodes_.push_back(std::move(f));
  }
  idx.leaf_files_.assign(cfg.leaf_count, {});
  for (auto& files : idx.leaf_files_) {
    const auto count = detail::read_le<std::uint64_t>(in);
    for (std::uint64_t k = 0; k < count; ++k) {
      files.push_back(SimilarityDigest::read(in));
      ++idx.file_count_;
    }
  }
  idx.cursor_ = idx.file_count_;
  idx.finalized_ = true;
  return idx;
}

}  // namespace hbft
