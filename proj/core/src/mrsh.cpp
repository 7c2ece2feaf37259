// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include "hbft/mrsh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "hbft/error.hpp"
#include "hbft/parallel.hpp"

namespace hbft {

namespace {

constexpr std::string_view kDigestMagic{"HBFT-SD\0", 8};
constexpr std::uint32_t kDigestVersion = 1;

constexpr std::uint32_t pow33(std::size_t e) {
  std::uint32_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= 33U;
  return r;
}
constexpr std::uint32_t kOutgoingFactor = pow33(kWindowSize);

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

// Best match fraction of each filter in `shorter` against any filter of
// `longer`, averaged over `shorter`'s filters weighted by their chunk counts.
double directional_match(const SimilarityDigest& shorter, const SimilarityDigest& longer) {
  double total = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < shorter.filters.size(); ++i) {
    const BloomFilter& fa = shorter.filters[i];
    const double bits_a = shorter.filter_bits[i];
    const double width = static_cast<double>(fa.bit_count());
    double best = 0.0;
    for (std::size_t j = 0; j < longer.filters.size() && best < 1.0; ++j) {
      const double bits_b = longer.filter_bits[j];
      const double min_bits = std::min(bits_a, bits_b);
      if (min_bits == 0.0) continue;
      const double common = static_cast<double>(common_bits(fa, longer.filters[j]));
      const double expected = bits_a * bits_b / width;
      double m;
      if (min_bits - expected <= 0.0) {
        m = common >= min_bits ? 1.0 : 0.0;
      } else {
        m = std::clamp((common - expected) / (min_bits - expected), 0.0, 1.0);
      }
      // A sparse filter on the longer side can only account for its own share of fa.
      m *= min_bits / bits_a;
      best = std::max(best, m);
    }
    const double w = static_cast<double>(fa.set_count());
    total += best * w;
    weight += w;
  }
  return weight == 0.0 ? 0.0 : total / weight;
}

}  // namespace

void DigestParams::validate() const {
  if (block_size == 0) throw ConfigError("block_size must be positive");
  if (filter_capacity == 0) throw ConfigError("filter_capacity must be positive");
  BloomFilter probe(filter_bytes);
  (void)probe;
}

void RollingWindow::push(std::uint8_t byte) noexcept {
  const std::size_t slot = seen_ % kWindowSize;
  const std::uint8_t outgoing = ring_[slot];
  ring_[slot] = byte;
  value_ = value_ * 33U + byte - outgoing * kOutgoingFactor;
  ++seen_;
}

ChunkSequence chunk_stream(ByteSpan input, std::uint32_t block_size) {
  if (input.empty()) throw EmptyInputError("cannot chunk empty input");
  if (block_size == 0) throw ConfigError("block_size must be positive");

  ChunkSequence seq;
  seq.chunks.reserve(input.size() / block_size + 1);
  RollingWindow window;
  std::size_t start = 0;
  const std::uint32_t trigger = block_size - 1;
  for (std::size_t t = 0; t < input.size(); ++t) {
    window.push(input[t]);
    if (window.full() && window.value() % block_size == trigger) {
      seq.chunks.push_back({start, t + 1 - start});
      start = t + 1;
    }
  }
  if (start < input.size()) seq.chunks.push_back({start, input.size() - start});

  seq.hashes.reserve(seq.chunks.size());
  for (const ByteRange& r : seq.chunks) {
    seq.hashes.push_back(chunk_hash(input.subspan(r.offset, r.length)));
  }
  return seq;
}

std::uint64_t chunk_hash(ByteSpan chunk) noexcept {
  std::uint64_t h = kFnvOffset;
  for (std::uint8_t b : chunk) {
    h ^= b;
    h *= kFnvPrime;
  }
  return h;
}

SimilarityDigest digest_from_hashes(std::string file_id, std::uint64_t file_size,
                                    std::vector<std::uint64_t> hashes,
                                    const DigestParams& params) {
  params.validate();
  SimilarityDigest d;
  d.file_id = std::move(file_id);
  d.file_size = file_size;
  d.params = params;
  d.chunk_count = hashes.size();
  d.filters.reserve(hashes.size() / params.filter_capacity + 1);
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    if (i % params.filter_capacity == 0) d.filters.emplace_back(params.filter_bytes);
    d.filters.back().insert_hash(hashes[i]);
  }
  d.hashes = std::move(hashes);
  d.filter_bits.reserve(d.filters.size());
  for (const BloomFilter& f : d.filters) {
    d.filter_bits.push_back(static_cast<std::uint32_t>(f.popcount()));
  }
  return d;
}

SimilarityDigest make_digest(std::string file_id, ByteSpan input, const DigestParams& params) {
  params.validate();
  ChunkSequence seq = chunk_stream(input, params.block_size);
  return digest_from_hashes(std::move(file_id), input.size(), std::move(seq.hashes), params);
}

Score compare_digests(const SimilarityDigest& a, const SimilarityDigest& b) {
  if (a.params.filter_bytes != b.params.filter_bytes) {
    throw ConfigError("cannot compare digests with different filter sizes");
  }
  double m;
  if (a.filters.size() < b.filters.size()) {
    m = directional_match(a, b);
  } else if (b.filters.size() < a.filters.size()) {
    m = directional_match(b, a);
  } else {
    m = (directional_match(a, b) + directional_match(b, a)) / 2.0;
  }
  const int value = static_cast<int>(std::lround(m * 100.0));
  return Score{std::clamp(value, 0, 100)};
}

PairwiseResult all_against_all(std::span<const SimilarityDigest> set_a,
                               std::span<const SimilarityDigest> set_b, Score threshold,
                               unsigned workers) {
  PairwiseResult result;
  result.comparison_count = std::uint64_t{set_a.size()} * set_b.size();
  if (set_a.empty() || set_b.empty()) return result;

  // Per-row outputs keep the result order independent of scheduling.
  std::vector<std::vector<ScoredPair>> rows(set_a.size());
  parallel_for(set_a.size(), workers, [&](std::size_t i) {
    for (const SimilarityDigest& other : set_b) {
      const Score s = compare_digests(set_a[i], other);
      if (s >= threshold) rows[i].push_back({set_a[i].file_id, other.file_id, s});
    }
  });
  for (auto& row : rows) {
    std::move(row.begin(), row.end(), std::back_inserter(result.matches));
  }
  return result;
}

void SimilarityDigest::write(std::ostream& out) const {
  detail::write_magic(out, kDigestMagic);
  detail::write_le<std::uint32_t>(out, kDigestVersion);
  detail::write_le<std::uint32_t>(out, params.block_size);
  detail::write_le<std::uint32_t>(out, params.filter_bytes);
  detail::write_le<std::uint32_t>(out, params.filter_capacity);
  detail::write_le<std::uint64_t>(out, chunk_count);
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(filters.size()));
  detail::write_le<std::uint64_t>(out, file_size);
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(file_id.size()));
  out.write(file_id.data(), static_cast<std::streamsize>(file_id.size()));
  for (const BloomFilter& f : filters) f.write(out);
  for (std::uint64_t h : hashes) detail::write_le<std::uint64_t>(out, h);
  detail::check_stream(out);
}

SimilarityDigest SimilarityDigest::read(std::istream& in) {
  detail::expect_magic(in, kDigestMagic, "similarity digest");
  const auto version = detail::read_le<std::uint32_t>(in);
  if (version != kDigestVersion) {
    throw FormatError("unsupported digest version " + std::to_string(version));
  }
  SimilarityDigest d;
  d.params.block_size = detail::read_le<std::uint32_t>(in);
  d.params.filter_bytes = detail::read_le<std::uint32_t>(in);
  d.params.filter_capacity = detail::read_le<std::uint32_t>(in);
  try {
    d.params.validate();
  } catch (const ConfigError& e) {
    throw FormatError(std::string("digest header: ") + e.what());
  }
  d.chunk_count = detail::read_le<std::uint64_t>(in);
  const auto filter_count = detail::read_le<std::uint32_t>(in);
  d.file_size = detail::read_le<std::uint64_t>(in);
  const auto id_len = detail::read_le<std::uint32_t>(in);
  const std::uint64_t expected_filters =
      (d.chunk_count + d.params.filter_capacity - 1) / d.params.filter_capacity;
  if (filter_count != expected_filters) {
    throw FormatError("digest filter count does not match chunk count");
  }
  if (id_len > (1U << 20)) throw FormatError("digest file_id too long");
  d.file_id.resize(id_len);
  if (!in.read(d.file_id.data(), id_len)) throw FormatError("truncated digest file_id");

  d.filters.reserve(filter_count);
  for (std::uint32_t i = 0; i < filter_count; ++i) {
    BloomFilter f = BloomFilter::read(in);
    if (f.size_bytes() != d.params.filter_bytes) {
      throw FormatError("digest filter size does not match header");
    }
    const std::uint64_t before = std::uint64_t{i} * d.params.filter_capacity;
    f.set_set_count(std::min<std::uint64_t>(d.params.filter_capacity, d.chunk_count - before));
    d.filter_bits.push_back(static_cast<std::uint32_t>(f.popcount()));
    d.filters.push_back(std::move(f));
  }
  d.hashes.resize(d.chunk_count);
  for (auto& h : d.hashes) h = detail::read_le<std::uint64_t>(in);
  return d;
}

}  // namespace hbft
