// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hbft/bloom.hpp"

namespace hbft {

using ByteSpan = std::span<const std::uint8_t>;

/// Width of the rolling window used to place chunk boundaries.
inline constexpr std::size_t kWindowSize = 7;

/// Chunking and digest geometry.
struct DigestParams {
  std::uint32_t block_size = 160;
  std::uint32_t filter_bytes = 256;
  std::uint32_t filter_capacity = 160;

  /// Throws ConfigError on a zero block size or capacity, or a bad filter size.
  void validate() const;

  friend bool operator==(const DigestParams&, const DigestParams&) = default;
};

struct ByteRange {
  std::size_t offset = 0;
  std::size_t length = 0;

  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

/// Content-defined chunks of one input and their FNV-1a hashes.
struct ChunkSequence {
  std::vector<ByteRange> chunks;
  std::vector<std::uint64_t> hashes;
};

/// Rolling polynomial over the last kWindowSize bytes: sum of b[t-k] * 33^k mod 2^32.
class RollingWindow {
 public:
  void push(std::uint8_t byte) noexcept;
  std::uint32_t value() const noexcept { return value_; }
  bool full() const noexcept { return seen_ >= kWindowSize; }

 private:
  std::uint8_t ring_[kWindowSize]{};
  std::size_t seen_ = 0;
  std::uint32_t value_ = 0;
};

/// Split `input` where the window value mod block_size equals block_size - 1.
/// Throws EmptyInputError on empty input.
ChunkSequence chunk_stream(ByteSpan input, std::uint32_t block_size = 160);

/// FNV-1a, 64-bit.
std::uint64_t chunk_hash(ByteSpan chunk) noexcept;

/// Similarity score in [0, 100].
struct Score {
  int value = 0;

  friend auto operator<=>(const Score&, const Score&) = default;
};

/// A file's similarity digest: a run of small Bloom filters plus the raw
/// chunk hashes they were built from.
struct SimilarityDigest {
  std::string file_id;
  std::uint64_t file_size = 0;
  DigestParams params;
  std::vector<BloomFilter> filters;
  std::uint64_t chunk_count = 0;
  std::vector<std::uint64_t> hashes;
  /// popcount of each filter, cached for scoring.
  std::vector<std::uint32_t> filter_bits;

  void write(std::ostream& out) const;
  static SimilarityDigest read(std::istream& in);
};

/// Build a digest from raw chunk hashes (filters rolled over every
/// filter_capacity inserts).
SimilarityDigest digest_from_hashes(std::string file_id, std::uint64_t file_size,
                                    std::vector<std::uint64_t> hashes,
                                    const DigestParams& params = {});

/// Chunk, hash and digest `input`. Throws EmptyInputError on empty input.
SimilarityDigest make_digest(std::string file_id, ByteSpan input, const DigestParams& params = {});

/// Symmetric similarity score between two digests built with the same filter size.
///
/// Each filter of the digest with fewer filters is matched against every
/// filter of the other. A pair's match fraction is
///   max(0, (e - E) / (min_bits - E))
/// where e is the number of common set bits, E = bits_a * bits_b / bit_count
/// is the overlap expected by chance and min_bits is the smaller popcount,
/// scaled by min_bits / bits_a so a sparse filter cannot vouch for a dense one.
/// The best fraction per filter is averaged (weighted by chunks per filter)
/// and scaled to 0..100. When both digests hold the same number of filters
/// both orientations are averaged.
Score compare_digests(const SimilarityDigest& a, const SimilarityDigest& b);

struct ScoredPair {
  std::string a;
  std::string b;
  Score score;

  friend bool operator==(const ScoredPair&, const ScoredPair&) = default;
};

struct PairwiseResult {
  std::vector<ScoredPair> matches;
  std::uint64_t comparison_count = 0;
};

/// Compare every digest of set_a with every digest of set_b, keeping pairs at
/// or above threshold. Matches come back in (a index, b index) order.
PairwiseResult all_against_all(std::span<const SimilarityDigest> set_a,
                               std::span<const SimilarityDigest> set_b, Score threshold,
                               unsigned workers = 1);

}  // namespace hbft
