// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hbft/mrsh.hpp"
#include "hbft/tree.hpp"

namespace hbft::harness {

// ---------------------------------------------------------------------------
// Synthetic corpora

enum class ContentModel {
  /// Every file is an independent pseudorandom stream.
  kPseudorandom,
  /// Files interleave fresh bytes with blocks drawn from a shared pool.
  kMixedRedundancy,
};

struct CorpusSpec {
  std::uint64_t seed = 1;
  std::size_t file_count = 0;
  std::size_t size_min = 4 * 1024;
  std::size_t size_max = 64 * 1024;
  ContentModel model = ContentModel::kPseudorandom;
  std::string name_prefix = "f";

  void validate() const;
};

struct CorpusFile {
  std::string name;
  std::vector<std::uint8_t> bytes;
};

using Corpus = std::vector<CorpusFile>;

/// Deterministic in-memory corpus; files are named <prefix><index>.bin.
Corpus generate_corpus(const CorpusSpec& spec, unsigned workers = 1);

/// Generate and write the corpus into `dir` (created if missing).
void generate_corpus(const CorpusSpec& spec, const std::filesystem::path& dir,
                     unsigned workers = 1);

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

/// Pseudorandom bytes whose chunking yields exactly `chunks` chunks.
std::vector<std::uint8_t> craft_chunked_file(std::uint64_t seed, std::size_t chunks,
                                             std::uint32_t block_size = 160);

std::vector<SimilarityDigest> digest_corpus(const Corpus& corpus, const DigestParams& params,
                                            unsigned workers = 1);

// ---------------------------------------------------------------------------
// Similarity plants

inline constexpr std::size_t kMutationBlockBytes = 512;
inline constexpr int kMaxPlantIterations = 30;

struct ScoreBand {
  int low = 0;
  int high = 100;
  std::size_t count = 0;

  bool contains(Score s) const noexcept { return s.value >= low && s.value <= high; }
};

struct PlantSpec {
  std::size_t identical_count = 50;
  std::vector<ScoreBand> similar_bands = {{80, 100, 10}, {60, 79, 10}, {40, 59, 10}, {20, 39, 10}};

  /// Bands inside [0, 100], low <= high, pairwise disjoint.
  void validate() const;
};

struct PlantResult {
  std::vector<std::uint8_t> bytes;
  Score score;
  std::size_t blocks_replaced = 0;
};

/// Replace seeded 512-byte blocks of `base` until compare_digests(base, mutant)
/// lands in [low, high]. The number of replaced blocks is bisected; throws
/// PlantingError if no count inside kMaxPlantIterations steps hits the band.
PlantResult plant_similar(ByteSpan base, int low, int high, std::uint64_t seed,
                          const DigestParams& params = {});

struct PlantRecord {
  std::string disk_name;
  std::string source_name;
  bool identical = false;
  int band_low = 100;
  int band_high = 100;
  Score planted_score{100};
};

struct PlantedDisk {
  Corpus disk;
  std::vector<PlantRecord> plants;
};

/// Append identical and banded near-duplicate copies of `illegal` files to
/// `disk`. Sources are distinct files; similar plants prefer bases of 16 KiB
/// or more and fall back to the next base when a band cannot be reached.
PlantedDisk plant_evidence(const Corpus& illegal, Corpus disk, const PlantSpec& plants,
                           std::uint64_t seed, const DigestParams& params = {});

// ---------------------------------------------------------------------------
// Experiments

struct RunOptions {
  DigestParams params;
  Score threshold{20};
  unsigned workers = 0;
  std::uint64_t seed = 0;
};

struct ReportConfig {
  std::string experiment;
  std::string label;
  TreeMode mode = TreeMode::kVariable;
  std::uint64_t memory_budget = 0;
  std::uint64_t leaf_count = 0;
  std::uint64_t root_size = 0;
  std::uint32_t min_run = kDefaultMinRun;
  int threshold = 20;
  std::uint64_t seed = 0;
  std::size_t tree_files = 0;
  std::size_t query_files = 0;
  unsigned workers = 0;
  DigestParams params;
};

struct BandRecall {
  int low = 0;
  int high = 100;
  std::size_t planted = 0;
  std::size_t found = 0;
  double recall = 0.0;
};

struct ExperimentReport {
  double build_time = 0.0;
  double search_time = 0.0;
  std::uint64_t baseline_comparisons = 0;
  std::uint64_t tree_comparisons = 0;
  double recall = 0.0;
  std::vector<BandRecall> similar_recall;
  ReportConfig config;
};

struct SelfRecallResult {
  std::vector<ExperimentReport> reports;  // one per min_run
  std::vector<std::vector<std::string>> missed;  // [run] -> files whose leaf was not reached
  std::vector<std::vector<std::vector<std::uint64_t>>> leaves_reached;  // [run][query]
  double digest_time = 0.0;
};

/// Index `corpus` and search every file for itself under each min_run.
/// A cfg.leaf_count of 0 means one file per leaf.
SelfRecallResult run_self_recall(const Corpus& corpus, TreeConfig cfg,
                                 std::span<const std::uint32_t> min_runs,
                                 const RunOptions& opts = {});

enum class Direction {
  kTreeOverA,  // index A, query B
  kTreeOverB,  // index B, query A
};

/// Build the tree over one corpus and search the other.
ExperimentReport run_disjoint(const Corpus& corpus_a, const Corpus& corpus_b, Direction direction,
                              TreeConfig cfg, const RunOptions& opts = {});

struct DisjointResult {
  std::vector<ExperimentReport> reports;
  /// Label of the variable-mode run with the smaller build + search time.
  std::string faster_direction;
  /// On the tree over the larger corpus: variable needed no more comparisons than fixed.
  bool variable_not_worse_on_larger = false;
};

/// Both directions in both modes; leaf counts follow the indexed corpus size
/// unless cfg.leaf_count is non-zero.
DisjointResult run_disjoint_study(const Corpus& corpus_a, const Corpus& corpus_b, TreeConfig cfg,
                                  const RunOptions& opts = {});

struct PlantOutcome {
  PlantRecord plant;
  bool found = false;
  std::optional<Score> rescored;
};

struct PlantedResult {
  ExperimentReport report;
  std::vector<PlantOutcome> outcomes;
  /// Wall time of the all-against-all baseline over the same digests; 0 if skipped.
  double baseline_time = 0.0;
  std::uint64_t baseline_matches = 0;
  double digest_time = 0.0;
};

/// Index `illegal`, search every `disk` file, and score the declared plants.
PlantedResult run_planted(const Corpus& illegal, const PlantedDisk& disk, const PlantSpec& plants,
                          TreeConfig cfg, const RunOptions& opts = {}, bool run_baseline = true);

// ---------------------------------------------------------------------------
// Reports

std::string to_json(const SelfRecallResult& r);
std::string to_json(const DisjointResult& r);
std::string to_json(const PlantedResult& r);

/// One row per ExperimentReport.
std::string to_csv(std::span<const ExperimentReport> reports);

}  // namespace hbft::harness
