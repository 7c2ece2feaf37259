// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "hbft/error.hpp"
#include "hbft/harness.hpp"
#include "hbft/io.hpp"
#include "hbft/mrsh.hpp"
#include "hbft/parallel.hpp"
#include "hbft/tree.hpp"

namespace hbft::cli {

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kFormatVersion = 1;
constexpr std::uint64_t kBenchDefaultBudget = 16ULL << 20;

struct GlobalOptions {
  std::uint32_t block_size = 160;
  std::uint32_t filter_bytes = 256;
  std::uint32_t filter_capacity = 160;
  std::uint32_t min_run = kDefaultMinRun;
  int threshold = 20;
  std::uint64_t budget = 10 * kGiB;
  std::string mode = "variable";
  unsigned workers = default_workers();

  DigestParams params() const { return {block_size, filter_bytes, filter_capacity}; }

  void validate() const {
    params().validate();
    if (threshold < 0 || threshold > 100) throw ConfigError("threshold must be within 0..100");
    if (min_run == 0) throw ConfigError("min_run must be at least 1");
    if (budget == 0) throw ConfigError("budget must be positive");
    (void)parse_tree_mode(mode);
  }
};

struct Input {
  std::string id;
  fs::path path;
};

// Files named by `target`: the file itself, or every file under a directory
// with ids relative to it.
std::vector<Input> collect_inputs(const fs::path& target) {
  std::error_code ec;
  if (fs::is_directory(target, ec)) {
    std::vector<Input> inputs;
    for (const fs::path& p : list_files(target)) {
      inputs.push_back({fs::relative(p, target).generic_string(), p});
    }
    return inputs;
  }
  if (!fs::exists(target, ec)) throw IoError(target.string() + " does not exist");
  return {{target.generic_string(), target}};
}

// Digest every input in parallel. Zero-byte files are skipped with a warning.
std::vector<SimilarityDigest> digest_inputs(const std::vector<Input>& inputs,
                                            const DigestParams& params, unsigned workers,
                                            std::ostream& err) {
  std::vector<std::optional<SimilarityDigest>> slots(inputs.size());
  parallel_for(inputs.size(), workers, [&](std::size_t i) {
    const std::vector<std::uint8_t> bytes = read_file(inputs[i].path);
    if (bytes.empty()) return;
    slots[i] = make_digest(inputs[i].id, bytes, params);
  });
  std::vector<SimilarityDigest> digests;
  digests.reserve(inputs.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) {
      digests.push_back(std::move(*slots[i]));
    } else {
      err << "warning: skipping zero-byte file " << inputs[i].path.string() << '\n';
    }
  }
  return digests;
}

SimilarityDigest digest_or_load(const fs::path& path, const DigestParams& params) {
  if (is_digest_file(path)) return load_digest(path);
  const std::vector<std::uint8_t> bytes = read_file(path);
  return make_digest(path.generic_string(), bytes, params);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out << text;
  if (!out) throw IoError("write failed on " + path.string());
}

std::vector<std::string> reversed(std::span<const std::string> args) {
  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  return rest;
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate matching with MRSH-style similarity digests and hierarchical Bloom "
               "filter trees",
               "hbft"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version",
                       std::string("hbft ") + kToolVersion + " (bloom format " +
                           std::to_string(kFormatVersion) + ", digest format " +
                           std::to_string(kFormatVersion) + ", index format " +
                           std::to_string(kFormatVersion) + ")");

  GlobalOptions g;
  app.add_option("--block-size", g.block_size, "Mean chunk length targeted by the rolling trigger");
  app.add_option("--filter-bytes", g.filter_bytes, "Size of each digest Bloom filter in bytes");
  app.add_option("--capacity", g.filter_capacity, "Chunks per digest filter before a new one starts");
  CLI::Option* min_run_opt =
      app.add_option("--min-run", g.min_run, "Consecutive contained hashes needed for a node match");
  app.add_option("--threshold", g.threshold, "Lowest similarity score reported (0-100)");
  CLI::Option* budget_opt =
      app.add_option("--budget", g.budget, "Tree memory budget in bytes (accepts KiB/MiB/GiB)")
          ->transform(CLI::AsSizeValue(false))
          ->default_str("10GiB");
  app.add_option("--mode", g.mode, "Tree layout")->check(CLI::IsMember({"variable", "fixed"}));
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);

  // hash
  CLI::App* hash_cmd = app.add_subcommand("hash", "Write the similarity digest of a file");
  std::string hash_path;
  std::string hash_out;
  hash_cmd->add_option("path", hash_path, "Input file")->required();
  hash_cmd->add_option("--out,-o", hash_out, "Digest output file (stdout when omitted)");

  // compare
  CLI::App* compare_cmd = app.add_subcommand("compare", "Print the 0-100 similarity of two inputs");
  std::string cmp_a;
  std::string cmp_b;
  compare_cmd->add_option("first", cmp_a, "Digest file or raw file")->required();
  compare_cmd->add_option("second", cmp_b, "Digest file or raw file")->required();

  // build
  CLI::App* build_cmd = app.add_subcommand("build", "Index a corpus directory into an HBFT snapshot");
  std::uint64_t build_leaves = 0;
  std::string build_out;
  std::string build_dir;
  CLI::Option* leaves_opt =
      build_cmd->add_option("--leaves", build_leaves, "Leaf count (default: one file per leaf)");
  build_cmd->add_option("--out", build_out, "Index snapshot output")->required();
  build_cmd->add_option("corpus-dir", build_dir, "Directory of reference files")->required();

  // search
  CLI::App* search_cmd = app.add_subcommand("search", "Search files against an index snapshot");
  std::string search_index;
  std::string search_target;
  bool fail_on_empty = false;
  search_cmd->add_option("--index", search_index, "Index snapshot")->required();
  search_cmd->add_flag("--fail-on-empty", fail_on_empty, "Exit 1 when nothing matches");
  search_cmd->add_option("query", search_target, "Query file or directory")->required();

  // bench
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Run a synthetic experiment (tree budget defaults to 16MiB unless --budget is set)");
  std::string experiment;
  std::uint64_t seed = 1;
  std::string report_out;
  std::string csv_out;
  std::size_t files = 2000;
  std::size_t files_a = 1000;
  std::size_t files_b = 2000;
  std::size_t illegal_files = 1000;
  std::size_t disk_files = 3000;
  std::size_t identical = 50;
  std::size_t per_band = 10;
  std::size_t size_min = 4 * 1024;
  std::size_t size_max = 64 * 1024;
  std::string content = "pseudorandom";
  std::vector<std::uint32_t> min_runs{4, 6, 8};
  std::size_t crafted_chunks = 5;
  std::uint64_t bench_leaves = 0;
  bench_cmd->add_option("experiment", experiment, "self-recall | disjoint | planted")
      ->required()
      ->check(CLI::IsMember({"self-recall", "disjoint", "planted"}));
  bench_cmd->add_option("--seed", seed, "Corpus seed");
  bench_cmd->add_option("--out", report_out, "JSON report path")->required();
  bench_cmd->add_option("--csv", csv_out, "Optional CSV report path");
  bench_cmd->add_option("--leaves", bench_leaves, "Leaf count (0: one file per leaf)");
  bench_cmd->add_option("--files", files, "self-recall: corpus size");
  bench_cmd->add_option("--files-a", files_a, "disjoint: size of corpus A");
  bench_cmd->add_option("--files-b", files_b, "disjoint: size of corpus B");
  bench_cmd->add_option("--illegal-files", illegal_files, "planted: reference corpus size");
  bench_cmd->add_option("--disk-files", disk_files, "planted: disk corpus size including plants");
  bench_cmd->add_option("--identical", identical, "planted: identical plants");
  bench_cmd->add_option("--per-band", per_band, "planted: similar plants per score band");
  bench_cmd->add_option("--size-min", size_min, "Smallest generated file in bytes");
  bench_cmd->add_option("--size-max", size_max, "Largest generated file in bytes");
  bench_cmd->add_option("--content", content, "Content model")
      ->check(CLI::IsMember({"pseudorandom", "mixed"}));
  bench_cmd->add_option("--min-runs", min_runs, "self-recall: min_run values")->delimiter(',');
  bench_cmd->add_option("--crafted-chunks", crafted_chunks,
                        "self-recall: add one file of exactly this many chunks (0: none)");

  try {
    std::vector<std::string> argv = reversed(args);
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << '\n' << app.help();
    return kExitUsage;
  }

  try {
    g.validate();
    const DigestParams params = g.params();

    if (hash_cmd->parsed()) {
      const std::vector<std::uint8_t> bytes = read_file(hash_path);
      const SimilarityDigest d = make_digest(fs::path(hash_path).generic_string(), bytes, params);
      if (hash_out.empty()) {
        d.write(out);
        out.flush();
      } else {
        save_digest(hash_out, d);
      }
      return kExitOk;
    }

    if (compare_cmd->parsed()) {
      const SimilarityDigest a = digest_or_load(cmp_a, params);
      const SimilarityDigest b = digest_or_load(cmp_b, params);
      out << compare_digests(a, b).value << '\n';
      return kExitOk;
    }

    if (build_cmd->parsed()) {
      if (leaves_opt->count() > 0 && build_leaves == 0) {
        throw ConfigError("--leaves must be at least 1");
      }
      const std::vector<Input> inputs = collect_inputs(build_dir);
      std::vector<SimilarityDigest> digests = digest_inputs(inputs, params, g.workers, err);
      if (digests.empty()) throw ConfigError("no non-empty files to index in " + build_dir);
      TreeConfig cfg{parse_tree_mode(g.mode), g.budget,
                     leaves_opt->count() > 0 ? build_leaves : digests.size(), g.min_run};
      HbftIndex index(cfg);
      const std::size_t n = digests.size();
      for (auto& d : digests) index.insert_file(std::move(d));
      index.finalize();
      save_index(build_out, index);
      out << "indexed " << n << " files into " << index.layout().leaf_count() << " leaves ("
          << to_string(cfg.mode) << ", root " << index.layout().root_size() << " bytes, "
          << index.layout().total_bytes() << " bytes of filters)\n";
      return kExitOk;
    }

    if (search_cmd->parsed()) {
      const HbftIndex index = load_index(search_index);
      const std::uint32_t min_run = min_run_opt->count() > 0 ? g.min_run : index.config().min_run;
      DigestParams query_params = params;
      for (std::uint64_t leaf = 0; leaf < index.layout().leaf_count(); ++leaf) {
        if (!index.leaf_files(leaf).empty()) {
          query_params = index.leaf_files(leaf).front().params;
          break;
        }
      }
      const std::vector<Input> inputs = collect_inputs(search_target);
      const std::vector<SimilarityDigest> queries =
          digest_inputs(inputs, query_params, g.workers, err);
      std::vector<SearchReport> reports(queries.size());
      parallel_for(queries.size(), g.workers, [&](std::size_t i) {
        reports[i] = index.search(queries[i], Score{g.threshold}, min_run);
      });

      std::vector<std::tuple<std::string, std::string, int>> hits;
      std::uint64_t probed = 0;
      std::uint64_t comparisons = 0;
      for (const SearchReport& r : reports) {
        probed += r.nodes_probed;
        comparisons += r.pairwise_comparisons;
        for (const LeafScore& s : r.scores) hits.emplace_back(r.query_id, s.file_id, s.score.value);
      }
      std::sort(hits.begin(), hits.end());
      for (const auto& [q, m, s] : hits) out << q << '\t' << m << '\t' << s << '\n';
      out << "# queries: " << queries.size() << '\n'
          << "# nodes_probed: " << probed << '\n'
          << "# pairwise_comparisons: " << comparisons << '\n'
          << "# hits: " << hits.size() << '\n';
      return (fail_on_empty && hits.empty()) ? kExitNoMatches : kExitOk;
    }

    if (bench_cmd->parsed()) {
      const std::uint64_t budget = budget_opt->count() > 0 ? g.budget : kBenchDefaultBudget;
      TreeConfig cfg{parse_tree_mode(g.mode), budget, bench_leaves, g.min_run};
      harness::RunOptions opts{params, Score{g.threshold}, g.workers, seed};
      const harness::ContentModel model = content == "mixed"
                                              ? harness::ContentModel::kMixedRedundancy
                                              : harness::ContentModel::kPseudorandom;
      auto corpus_spec = [&](std::uint64_t s, std::size_t count, const std::string& prefix) {
        return harness::CorpusSpec{s, count, size_min, size_max, model, prefix};
      };

      std::string json;
      std::vector<harness::ExperimentReport> rows;
      if (experiment == "self-recall") {
        harness::Corpus corpus = harness::generate_corpus(corpus_spec(seed, files, "ref_"), g.workers);
        if (crafted_chunks > 0) {
          corpus.push_back({"crafted_small.bin",
                            harness::craft_chunked_file(seed, crafted_chunks, params.block_size)});
        }
        const auto result = harness::run_self_recall(corpus, cfg, min_runs, opts);
        json = harness::to_json(result);
        rows = result.reports;
        for (const auto& r : result.reports) {
          out << "min_run " << r.config.min_run << ": recall " << r.recall << ", "
              << r.tree_comparisons << " of " << r.baseline_comparisons << " comparisons\n";
        }
      } else if (experiment == "disjoint") {
        const auto a = harness::generate_corpus(corpus_spec(seed, files_a, "a_"), g.workers);
        const auto b =
            harness::generate_corpus(corpus_spec(seed ^ 0xD15C0ULL, files_b, "b_"), g.workers);
        const auto result = harness::run_disjoint_study(a, b, cfg, opts);
        json = harness::to_json(result);
        rows = result.reports;
        for (const auto& r : result.reports) {
          out << r.config.label << ": " << r.tree_comparisons << " of " << r.baseline_comparisons
              << " comparisons, build " << r.build_time << " s, search " << r.search_time
              << " s\n";
        }
        out << "faster direction: " << result.faster_direction << '\n';
      } else {
        harness::PlantSpec plants;
        plants.identical_count = identical;
        for (auto& band : plants.similar_bands) band.count = per_band;
        std::size_t plant_total = identical + per_band * plants.similar_bands.size();
        if (plant_total > disk_files) throw ConfigError("--disk-files is smaller than the plant count");
        const auto illegal =
            harness::generate_corpus(corpus_spec(seed, illegal_files, "ref_"), g.workers);
        auto disk = harness::generate_corpus(
            corpus_spec(seed ^ 0xD15CULL, disk_files - plant_total, "disk_"), g.workers);
        const auto planted = harness::plant_evidence(illegal, std::move(disk), plants, seed, params);
        const auto result = harness::run_planted(illegal, planted, plants, cfg, opts);
        json = harness::to_json(result);
        rows = {result.report};
        out << "identical recall " << result.report.recall << '\n';
        for (const auto& b : result.report.similar_recall) {
          out << "band " << b.low << "-" << b.high << ": " << b.found << "/" << b.planted << '\n';
        }
        out << "tree " << result.report.build_time + result.report.search_time
            << " s vs all-against-all " << result.baseline_time << " s\n";
      }
      write_text(report_out, json + "\n");
      if (!csv_out.empty()) write_text(csv_out, harness::to_csv(rows));
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace hbft::cli
