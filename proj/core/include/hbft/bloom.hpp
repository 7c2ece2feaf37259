// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace hbft {

/// Number of bits set per inserted chunk hash.
inline constexpr int kBitsPerHash = 5;

/// Smallest filter the slice rule accepts.
inline constexpr std::size_t kMinFilterBytes = 32;

/// Five bit positions for one chunk hash inside a filter of a given width.
struct BitPositions {
  std::uint64_t index[kBitsPerHash];
};

/// Derive the bit positions of `hash` for a filter of `log2_bits` address bits.
///
/// The hash is read as a stream of log2_bits-wide slices starting from the
/// least-significant bit. When five slices do not fit in 64 bits the stream
/// continues with successive splitmix64 rounds of the hash.
BitPositions derive_positions(std::uint64_t hash, unsigned log2_bits) noexcept;

/// Power-of-two sized Bloom filter over 64-bit chunk hashes.
///
/// Used both for the small per-file digest filters and for HBFT nodes. The
/// same raw hash maps to different positions in filters of different widths.
class BloomFilter {
 public:
  /// Throws ConfigError unless size_bytes is a power of two >= 32.
  explicit BloomFilter(std::size_t size_bytes);

  std::size_t size_bytes() const noexcept { return words_.size() * 8; }
  std::uint64_t bit_count() const noexcept { return std::uint64_t{words_.size()} * 64; }
  unsigned log2_bits() const noexcept { return log2_bits_; }

  /// Number of insert_hash calls (and merged-in inserts); diagnostic only.
  std::uint64_t set_count() const noexcept { return set_count_; }
  void set_set_count(std::uint64_t n) noexcept { set_count_ = n; }

  void insert_hash(std::uint64_t hash) noexcept;
  bool contains_hash(std::uint64_t hash) const noexcept;

  /// dst |= src. Throws MergeError on a size mismatch.
  void merge_from(const BloomFilter& src);

  std::uint64_t popcount() const noexcept;
  double fill_ratio() const noexcept;

  bool test_bit(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set_bit(std::uint64_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  /// Set every bit; handy for saturation tests.
  void fill() noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Bit arrays equal; set_count is ignored.
  friend bool operator==(const BloomFilter& a, const BloomFilter& b) noexcept {
    return a.words_ == b.words_;
  }

  /// 16-byte header followed by the little-endian bit array.
  void write(std::ostream& out) const;
  static BloomFilter read(std::istream& in);

 private:
  std::vector<std::uint64_t> words_;
  unsigned log2_bits_ = 0;
  std::uint64_t set_count_ = 0;
};

/// popcount(a & b) over two equal-size filters.
std::uint64_t common_bits(const BloomFilter& a, const BloomFilter& b) noexcept;

}  // namespace hbft
