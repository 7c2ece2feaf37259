// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include "hbft/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "hbft/error.hpp"
#include "hbft/io.hpp"
#include "hbft/parallel.hpp"
#include "json.hpp"

namespace hbft::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::size_t kPoolBlockBytes = 4096;
constexpr std::size_t kPoolBlocks = 64;
constexpr unsigned kSharedBlockPercent = 35;
constexpr std::size_t kPreferredPlantBase = 16 * 1024;

void fill_random(std::mt19937_64& rng, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  while (i < n) {
    std::uint64_t word = rng();
    for (int b = 0; b < 8 && i < n; ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word);
      word >>= 8;
    }
  }
}

std::string numbered(const std::string& prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, i);
  return prefix + buf;
}

// Fisher-Yates on plain modulo draws; std::shuffle's output is not portable.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

struct BuiltIndex {
  HbftIndex index;
  std::vector<std::uint64_t> leaf_of;
  double build_time = 0.0;
};

BuiltIndex build_index(const std::vector<SimilarityDigest>& digests, const TreeConfig& cfg) {
  std::vector<SimilarityDigest> copies = digests;
  const auto start = Clock::now();
  HbftIndex index(cfg);
  std::vector<std::uint64_t> leaf_of;
  leaf_of.reserve(copies.size());
  for (auto& d : copies) leaf_of.push_back(index.insert_file(std::move(d)));
  index.finalize();
  const double elapsed = seconds_since(start);
  return {std::move(index), std::move(leaf_of), elapsed};
}

std::vector<SearchReport> search_all(const HbftIndex& index,
                                     const std::vector<SimilarityDigest>& queries, Score threshold,
                                     std::uint32_t min_run, unsigned workers) {
  std::vector<SearchReport> out(queries.size());
  parallel_for(queries.size(), workers, [&](std::size_t i) {
    out[i] = index.search(queries[i], threshold, min_run);
  });
  return out;
}

bool reached(const SearchReport& r, std::uint64_t leaf) {
  return std::find(r.leaves_reached.begin(), r.leaves_reached.end(), leaf) !=
         r.leaves_reached.end();
}

std::uint64_t total_comparisons(const std::vector<SearchReport>& reports) {
  std::uint64_t n = 0;
  for (const auto& r : reports) n += r.pairwise_comparisons;
  return n;
}

ReportConfig echo(const std::string& experiment, const std::string& label, const HbftIndex& index,
                  std::uint32_t min_run, const RunOptions& opts, std::size_t tree_files,
                  std::size_t query_files) {
  ReportConfig c;
  c.experiment = experiment;
  c.label = label;
  c.mode = index.config().mode;
  c.memory_budget = index.config().memory_budget;
  c.leaf_count = index.layout().leaf_count();
  c.root_size = index.layout().root_size();
  c.min_run = min_run;
  c.threshold = opts.threshold.value;
  c.seed = opts.seed;
  c.tree_files = tree_files;
  c.query_files = query_files;
  c.workers = opts.workers == 0 ? default_workers() : opts.workers;
  c.params = opts.params;
  return c;
}

TreeConfig with_leaves(TreeConfig cfg, std::size_t files) {
  if (cfg.leaf_count == 0) {
    if (files == 0) throw ConfigError("cannot build a tree over an empty corpus");
    cfg.leaf_count = files;
  }
  return cfg;
}

using json = nlohmann::ordered_json;

json config_json(const ReportConfig& c) {
  return json{{"experiment", c.experiment},
              {"label", c.label},
              {"mode", std::string(to_string(c.mode))},
              {"memory_budget", c.memory_budget},
              {"leaf_count", c.leaf_count},
              {"root_size", c.root_size},
              {"min_run", c.min_run},
              {"threshold", c.threshold},
              {"seed", c.seed},
              {"tree_files", c.tree_files},
              {"query_files", c.query_files},
              {"workers", c.workers},
              {"block_size", c.params.block_size},
              {"filter_bytes", c.params.filter_bytes},
              {"filter_capacity", c.params.filter_capacity}};
}

json report_json(const ExperimentReport& r) {
  json bands = json::array();
  for (const auto& b : r.similar_recall) {
    bands.push_back({{"band", std::to_string(b.low) + "-" + std::to_string(b.high)},
                     {"low", b.low},
                     {"high", b.high},
                     {"planted", b.planted},
                     {"found", b.found},
                     {"recall", b.recall}});
  }
  return json{{"build_time", r.build_time},
              {"search_time", r.search_time},
              {"baseline_comparisons", r.baseline_comparisons},
              {"tree_comparisons", r.tree_comparisons},
              {"recall", r.recall},
              {"similar_recall", bands},
              {"config", config_json(r.config)}};
}

json reports_json(std::span<const ExperimentReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpora

void CorpusSpec::validate() const {
  if (size_min < 1) throw ConfigError("size_min must be at least 1 byte");
  if (size_max < size_min) throw ConfigError("size_max must be >= size_min");
}

Corpus generate_corpus(const CorpusSpec& spec, unsigned workers) {
  spec.validate();
  std::mt19937_64 master(spec.seed);
  std::vector<std::uint64_t> seeds(spec.file_count);
  std::vector<std::size_t> sizes(spec.file_count);
  const std::uint64_t span = spec.size_max - spec.size_min + 1;
  for (std::size_t i = 0; i < spec.file_count; ++i) {
    seeds[i] = master();
    sizes[i] = spec.size_min + static_cast<std::size_t>(master() % span);
  }

  std::vector<std::uint8_t> pool;
  if (spec.model == ContentModel::kMixedRedundancy) {
    std::mt19937_64 pool_rng(master());
    pool.resize(kPoolBlocks * kPoolBlockBytes);
    fill_random(pool_rng, pool.data(), pool.size());
  }

  Corpus corpus(spec.file_count);
  parallel_for(spec.file_count, workers, [&](std::size_t i) {
    CorpusFile& f = corpus[i];
    f.name = numbered(spec.name_prefix, i, 6) + ".bin";
    f.bytes.resize(sizes[i]);
    std::mt19937_64 rng(seeds[i]);
    if (spec.model == ContentModel::kPseudorandom) {
      fill_random(rng, f.bytes.data(), f.bytes.size());
      return;
    }
    for (std::size_t off = 0; off < f.bytes.size(); off += kPoolBlockBytes) {
      const std::size_t n = std::min(kPoolBlockBytes, f.bytes.size() - off);
      if (rng() % 100 < kSharedBlockPercent) {
        const std::size_t block = rng() % kPoolBlocks;
        std::copy_n(pool.begin() + static_cast<std::ptrdiff_t>(block * kPoolBlockBytes), n,
                    f.bytes.begin() + static_cast<std::ptrdiff_t>(off));
      } else {
        fill_random(rng, f.bytes.data() + off, n);
      }
    }
  });
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const CorpusFile& f : corpus) write_file(dir / f.name, f.bytes);
}

void generate_corpus(const CorpusSpec& spec, const std::filesystem::path& dir, unsigned workers) {
  write_corpus(generate_corpus(spec, workers), dir);
}

std::vector<std::uint8_t> craft_chunked_file(std::uint64_t seed, std::size_t chunks,
                                             std::uint32_t block_size) {
  if (chunks == 0) throw ConfigError("a crafted file needs at least one chunk");
  std::mt19937_64 rng(seed);
  std::size_t length = chunks * block_size * 4 + 64;
  for (int attempt = 0; attempt < 64; ++attempt, length *= 2) {
    std::vector<std::uint8_t> bytes(length);
    fill_random(rng, bytes.data(), bytes.size());
    const ChunkSequence seq = chunk_stream(bytes, block_size);
    // The last chunk may be an untriggered tail; only triggered ones are usable.
    if (seq.chunks.size() <= chunks) continue;
    const ByteRange& last = seq.chunks[chunks - 1];
    bytes.resize(last.offset + last.length);
    return bytes;
  }
  throw Error("could not craft a file with the requested chunk count");
}

std::vector<SimilarityDigest> digest_corpus(const Corpus& corpus, const DigestParams& params,
                                            unsigned workers) {
  std::vector<SimilarityDigest> out(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    out[i] = make_digest(corpus[i].name, corpus[i].bytes, params);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Plants

void PlantSpec::validate() const {
  for (std::size_t i = 0; i < similar_bands.size(); ++i) {
    const ScoreBand& b = similar_bands[i];
    if (b.low < 0 || b.high > 100 || b.low > b.high) {
      throw ConfigError("score band must satisfy 0 <= low <= high <= 100");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const ScoreBand& o = similar_bands[j];
      if (b.low <= o.high && o.low <= b.high) throw ConfigError("score bands overlap");
    }
  }
}

PlantResult plant_similar(ByteSpan base, int low, int high, std::uint64_t seed,
                          const DigestParams& params) {
  if (low < 0 || high > 100 || low > high) throw ConfigError("invalid target band");
  if (base.size() < 1024) throw PlantingError("plant base must be at least 1 KiB");

  const SimilarityDigest base_digest = make_digest("base", base, params);
  if (low == 100) {
    return {std::vector<std::uint8_t>(base.begin(), base.end()),
            compare_digests(base_digest, base_digest), 0};
  }

  const std::size_t blocks = (base.size() + kMutationBlockBytes - 1) / kMutationBlockBytes;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(blocks);
  std::iota(order.begin(), order.end(), std::size_t{0});
  seeded_shuffle(order, rng);
  std::vector<std::uint8_t> replacement(blocks * kMutationBlockBytes);
  fill_random(rng, replacement.data(), replacement.size());

  auto mutate = [&](std::size_t k) {
    std::vector<std::uint8_t> out(base.begin(), base.end());
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t off = order[i] * kMutationBlockBytes;
      const std::size_t n = std::min(kMutationBlockBytes, out.size() - off);
      std::copy_n(replacement.begin() + static_cast<std::ptrdiff_t>(off), n,
                  out.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return out;
  };

  std::size_t lo = 1;
  std::size_t hi = blocks;
  for (int iter = 0; iter < kMaxPlantIterations && lo <= hi; ++iter) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<std::uint8_t> mutant = mutate(mid);
    const Score s = compare_digests(base_digest, make_digest("mutant", mutant, params));
    if (s.value >= low && s.value <= high) return {std::move(mutant), s, mid};
    if (s.value > high) {
      lo = mid + 1;
    } else {
      if (mid == 0) break;
      hi = mid - 1;
    }
  }
  throw PlantingError("could not reach score band " + std::to_string(low) + "-" +
                      std::to_string(high));
}

PlantedDisk plant_evidence(const Corpus& illegal, Corpus disk, const PlantSpec& plants,
                           std::uint64_t seed, const DigestParams& params) {
  plants.validate();
  std::size_t similar_total = 0;
  for (const auto& b : plants.similar_bands) similar_total += b.count;
  if (plants.identical_count + similar_total > illegal.size()) {
    throw PlantingError("not enough reference files for the requested plants");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(illegal.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  seeded_shuffle(order, rng);

  PlantedDisk out;
  out.disk = std::move(disk);
  for (std::size_t i = 0; i < plants.identical_count; ++i) {
    const CorpusFile& src = illegal[order[i]];
    PlantRecord rec;
    rec.disk_name = numbered("plant_identical_", i, 3) + ".bin";
    rec.source_name = src.name;
    rec.identical = true;
    out.disk.push_back({rec.disk_name, src.bytes});
    out.plants.push_back(std::move(rec));
  }

  std::vector<std::size_t> bases;
  for (std::size_t i = plants.identical_count; i < order.size(); ++i) {
    if (illegal[order[i]].bytes.size() >= kPreferredPlantBase) bases.push_back(order[i]);
  }
  for (std::size_t i = plants.identical_count; i < order.size(); ++i) {
    const std::size_t n = illegal[order[i]].bytes.size();
    if (n >= 1024 && n < kPreferredPlantBase) bases.push_back(order[i]);
  }

  std::size_t next_base = 0;
  std::uint64_t attempt = 0;
  for (const ScoreBand& band : plants.similar_bands) {
    for (std::size_t k = 0; k < band.count; ++k) {
      bool planted = false;
      while (!planted) {
        if (next_base >= bases.size()) {
          throw PlantingError("ran out of plant bases for band " + std::to_string(band.low) +
                              "-" + std::to_string(band.high));
        }
        const CorpusFile& src = illegal[bases[next_base++]];
        try {
          PlantResult r = plant_similar(src.bytes, band.low, band.high,
                                        seed ^ (0x9E3779B97F4A7C15ULL * ++attempt), params);
          PlantRecord rec;
          rec.disk_name = "plant_similar_" + numbered("", static_cast<std::size_t>(band.low), 3) +
                          "_" + numbered("", static_cast<std::size_t>(band.high), 3) + "_" +
                          numbered("", k, 2) + ".bin";
          rec.source_name = src.name;
          rec.band_low = band.low;
          rec.band_high = band.high;
          rec.planted_score = r.score;
          out.disk.push_back({rec.disk_name, std::move(r.bytes)});
          out.plants.push_back(std::move(rec));
          planted = true;
        } catch (const PlantingError&) {
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

SelfRecallResult run_self_recall(const Corpus& corpus, TreeConfig cfg,
                                 std::span<const std::uint32_t> min_runs,
                                 const RunOptions& opts) {
  cfg = with_leaves(cfg, corpus.size());
  SelfRecallResult result;
  const auto digest_start = Clock::now();
  const auto digests = digest_corpus(corpus, opts.params, opts.workers);
  result.digest_time = seconds_since(digest_start);

  BuiltIndex built = build_index(digests, cfg);
  for (std::uint32_t min_run : min_runs) {
    const auto start = Clock::now();
    const auto reports = search_all(built.index, digests, opts.threshold, min_run, opts.workers);
    const double search_time = seconds_since(start);

    std::vector<std::string> missed;
    std::vector<std::vector<std::uint64_t>> leaves;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (!reached(reports[i], built.leaf_of[i])) missed.push_back(digests[i].file_id);
      leaves.push_back(reports[i].leaves_reached);
    }

    ExperimentReport r;
    r.build_time = built.build_time;
    r.search_time = search_time;
    r.baseline_comparisons = std::uint64_t{corpus.size()} * corpus.size();
    r.tree_comparisons = total_comparisons(reports);
    r.recall = corpus.empty() ? 1.0
                              : static_cast<double>(corpus.size() - missed.size()) /
                                    static_cast<double>(corpus.size());
    r.config = echo("self-recall", "min_run=" + std::to_string(min_run), built.index, min_run,
                    opts, corpus.size(), corpus.size());
    result.reports.push_back(std::move(r));
    result.missed.push_back(std::move(missed));
    result.leaves_reached.push_back(std::move(leaves));
  }
  return result;
}

ExperimentReport run_disjoint(const Corpus& corpus_a, const Corpus& corpus_b, Direction direction,
                              TreeConfig cfg, const RunOptions& opts) {
  const bool over_a = direction == Direction::kTreeOverA;
  const Corpus& tree_corpus = over_a ? corpus_a : corpus_b;
  const Corpus& query_corpus = over_a ? corpus_b : corpus_a;
  cfg = with_leaves(cfg, tree_corpus.size());

  const auto tree_digests = digest_corpus(tree_corpus, opts.params, opts.workers);
  const auto query_digests = digest_corpus(query_corpus, opts.params, opts.workers);

  BuiltIndex built = build_index(tree_digests, cfg);
  const auto start = Clock::now();
  const auto reports =
      search_all(built.index, query_digests, opts.threshold, cfg.min_run, opts.workers);
  const double search_time = seconds_since(start);

  ExperimentReport r;
  r.build_time = built.build_time;
  r.search_time = search_time;
  r.baseline_comparisons = std::uint64_t{corpus_a.size()} * corpus_b.size();
  r.tree_comparisons = total_comparisons(reports);
  // No planted overlap between disjoint corpora, so recall is vacuous.
  r.recall = 1.0;
  r.config = echo("disjoint", std::string(over_a ? "tree=A" : "tree=B") + "," +
                                  std::string(to_string(cfg.mode)),
                  built.index, cfg.min_run, opts, tree_corpus.size(), query_corpus.size());
  return r;
}

DisjointResult run_disjoint_study(const Corpus& corpus_a, const Corpus& corpus_b, TreeConfig cfg,
                                  const RunOptions& opts) {
  DisjointResult result;
  for (TreeMode mode : {TreeMode::kVariable, TreeMode::kFixed}) {
    for (Direction dir : {Direction::kTreeOverA, Direction::kTreeOverB}) {
      TreeConfig c = cfg;
      c.mode = mode;
      result.reports.push_back(run_disjoint(corpus_a, corpus_b, dir, c, opts));
    }
  }
  const ExperimentReport& var_a = result.reports[0];
  const ExperimentReport& var_b = result.reports[1];
  const double time_a = var_a.build_time + var_a.search_time;
  const double time_b = var_b.build_time + var_b.search_time;
  result.faster_direction = time_a <= time_b ? var_a.config.label : var_b.config.label;

  const bool b_larger = corpus_b.size() > corpus_a.size();
  const ExperimentReport& var_large = result.reports[b_larger ? 1 : 0];
  const ExperimentReport& fixed_large = result.reports[b_larger ? 3 : 2];
  result.variable_not_worse_on_larger =
      var_large.tree_comparisons <= fixed_large.tree_comparisons;
  return result;
}

PlantedResult run_planted(const Corpus& illegal, const PlantedDisk& disk, const PlantSpec& plants,
                          TreeConfig cfg, const RunOptions& opts, bool run_baseline) {
  cfg = with_leaves(cfg, illegal.size());
  PlantedResult result;

  const auto digest_start = Clock::now();
  const auto illegal_digests = digest_corpus(illegal, opts.params, opts.workers);
  const auto disk_digests = digest_corpus(disk.disk, opts.params, opts.workers);
  result.digest_time = seconds_since(digest_start);

  BuiltIndex built = build_index(illegal_digests, cfg);
  const auto start = Clock::now();
  const auto reports =
      search_all(built.index, disk_digests, opts.threshold, cfg.min_run, opts.workers);
  const double search_time = seconds_since(start);

  std::unordered_map<std::string, std::size_t> disk_pos;
  for (std::size_t i = 0; i < disk.disk.size(); ++i) disk_pos.emplace(disk.disk[i].name, i);
  std::unordered_map<std::string, std::uint64_t> source_leaf;
  for (std::size_t i = 0; i < illegal.size(); ++i) source_leaf.emplace(illegal[i].name, built.leaf_of[i]);

  std::size_t identical = 0;
  std::size_t identical_found = 0;
  std::vector<BandRecall> bands;
  for (const auto& b : plants.similar_bands) bands.push_back({b.low, b.high, 0, 0, 0.0});

  for (const PlantRecord& p : disk.plants) {
    const auto dit = disk_pos.find(p.disk_name);
    const auto sit = source_leaf.find(p.source_name);
    if (dit == disk_pos.end() || sit == source_leaf.end()) {
      throw Error("plant " + p.disk_name + " does not resolve to a disk and reference file");
    }
    const SearchReport& rep = reports[dit->second];
    PlantOutcome o{p, reached(rep, sit->second), std::nullopt};
    for (const LeafScore& s : rep.scores) {
      if (s.file_id == p.source_name) o.rescored = s.score;
    }
    if (p.identical) {
      ++identical;
      identical_found += o.found ? 1 : 0;
    } else {
      for (auto& b : bands) {
        if (p.band_low == b.low && p.band_high == b.high) {
          ++b.planted;
          b.found += o.found ? 1 : 0;
        }
      }
    }
    result.outcomes.push_back(std::move(o));
  }
  for (auto& b : bands) {
    b.recall = b.planted == 0 ? 1.0 : static_cast<double>(b.found) / static_cast<double>(b.planted);
  }

  ExperimentReport& r = result.report;
  r.build_time = built.build_time;
  r.search_time = search_time;
  r.baseline_comparisons = std::uint64_t{illegal.size()} * disk.disk.size();
  r.tree_comparisons = total_comparisons(reports);
  r.recall = identical == 0 ? 1.0
                            : static_cast<double>(identical_found) / static_cast<double>(identical);
  r.similar_recall = std::move(bands);
  r.config = echo("planted", std::string(to_string(cfg.mode)), built.index, cfg.min_run, opts,
                  illegal.size(), disk.disk.size());

  if (run_baseline) {
    const auto base_start = Clock::now();
    const PairwiseResult baseline =
        all_against_all(disk_digests, illegal_digests, opts.threshold, opts.workers);
    result.baseline_time = seconds_since(base_start);
    result.baseline_matches = baseline.matches.size();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Reports

std::string to_json(const SelfRecallResult& r) {
  json missed = json::array();
  for (std::size_t i = 0; i < r.reports.size(); ++i) {
    missed.push_back({{"min_run", r.reports[i].config.min_run}, {"files", r.missed[i]}});
  }
  json doc{{"experiment", "self-recall"},
           {"reports", reports_json(r.reports)},
           {"observations", {{"digest_time", r.digest_time}, {"missed", missed}}}};
  return doc.dump(2);
}

std::string to_json(const DisjointResult& r) {
  json doc{{"experiment", "disjoint"},
           {"reports", reports_json(r.reports)},
           {"observations",
            {{"faster_direction", r.faster_direction},
             {"variable_not_worse_on_larger", r.variable_not_worse_on_larger}}}};
  return doc.dump(2);
}

std::string to_json(const PlantedResult& r) {
  json plants = json::array();
  for (const auto& o : r.outcomes) {
    plants.push_back({{"disk_file", o.plant.disk_name},
                      {"source_file", o.plant.source_name},
                      {"identical", o.plant.identical},
                      {"band", std::to_string(o.plant.band_low) + "-" +
                                   std::to_string(o.plant.band_high)},
                      {"planted_score", o.plant.planted_score.value},
                      {"found", o.found},
                      {"rescored_score", o.rescored ? json(o.rescored->value) : json(nullptr)}});
  }
  const double tree_total = r.report.build_time + r.report.search_time;
  json doc{{"experiment", "planted"},
           {"reports", reports_json(std::span(&r.report, 1))},
           {"observations",
            {{"digest_time", r.digest_time},
             {"baseline_time", r.baseline_time},
             {"baseline_matches", r.baseline_matches},
             {"tree_total_time", tree_total},
             {"tree_to_baseline_time_ratio",
              r.baseline_time > 0.0 ? json(tree_total / r.baseline_time) : json(nullptr)},
             {"plants", plants}}}};
  return doc.dump(2);
}

std::string to_csv(std::span<const ExperimentReport> reports) {
  std::ostringstream out;
  out << "experiment,label,mode,leaf_count,min_run,build_time,search_time,"
         "baseline_comparisons,tree_comparisons,recall,similar_recall\n";
  for (const auto& r : reports) {
    std::string bands;
    for (const auto& b : r.similar_recall) {
      if (!bands.empty()) bands += ';';
      bands += std::to_string(b.low) + "-" + std::to_string(b.high) + ":" +
               std::to_string(b.recall);
    }
    out << r.config.experiment << ',' << '"' << r.config.label << '"' << ','
        << to_string(r.config.mode) << ',' << r.config.leaf_count << ',' << r.config.min_run << ','
        << r.build_time << ',' << r.search_time << ',' << r.baseline_comparisons << ','
        << r.tree_comparisons << ',' << r.recall << ',' << bands << '\n';
  }
  return out.str();
}

}  // namespace hbft::harness
