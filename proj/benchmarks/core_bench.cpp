// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hbft/bloom.hpp"
#include "hbft/harness.hpp"
#include "hbft/mrsh.hpp"
#include "hbft/tree.hpp"

namespace {

std::vector<std::uint8_t> bytes(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

void BM_BloomInsert(benchmark::State& state) {
  hbft::BloomFilter f(static_cast<std::size_t>(state.range(0)));
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (auto _ : state) {
    f.insert_hash(h);
    h = h * 6364136223846793005ULL + 1;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BloomInsert)->Arg(256)->Arg(64 << 10)->Arg(16 << 20);

void BM_BloomQuery(benchmark::State& state) {
  hbft::BloomFilter f(static_cast<std::size_t>(state.range(0)));
  for (std::uint64_t i = 0; i < 10000; ++i) f.insert_hash(i * 0x9E3779B97F4A7C15ULL);
  std::uint64_t h = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.contains_hash(h));
    h = h * 6364136223846793005ULL + 1;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BloomQuery)->Arg(64 << 10)->Arg(16 << 20);

void BM_ChunkStream(benchmark::State& state) {
  const auto data = bytes(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hbft::chunk_stream(data));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChunkStream)->Arg(64 << 10)->Arg(1 << 20);

void BM_CompareDigests(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = hbft::make_digest("a", bytes(1, n));
  const auto b = hbft::make_digest("b", bytes(2, n));
  for (auto _ : state) benchmark::DoNotOptimize(hbft::compare_digests(a, b));
}
BENCHMARK(BM_CompareDigests)->Arg(32 << 10)->Arg(1 << 20);

void BM_TreeSearch(benchmark::State& state) {
  namespace h = hbft::harness;
  const auto leaves = static_cast<std::size_t>(state.range(0));
  const auto ref = h::digest_corpus(h::generate_corpus(h::CorpusSpec{1, leaves}), {});
  const auto queries = h::digest_corpus(h::generate_corpus(h::CorpusSpec{2, 64}), {});
  hbft::HbftIndex index({hbft::TreeMode::kVariable, 16 << 20, leaves, 4});
  for (const auto& d : ref) index.insert_file(d);
  index.finalize();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.search(queries[i++ % queries.size()], hbft::Score{20}));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TreeSearch)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
