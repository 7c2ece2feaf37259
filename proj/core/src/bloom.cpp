// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include "hbft/bloom.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "byte_io.hpp"
#include "hbft/error.hpp"

namespace hbft {

namespace {

constexpr std::string_view kMagic{"HBFT-BF\0", 8};
constexpr std::uint32_t kVersion = 1;
// 2^40 bytes; keeps five slices within five stream words.
constexpr unsigned kMaxLog2Bytes = 40;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

BitPositions derive_positions(std::uint64_t hash, unsigned log2_bits) noexcept {
  BitPositions out{};
  const std::uint64_t mask = (std::uint64_t{1} << log2_bits) - 1;
  if (log2_bits * kBitsPerHash <= 64) {
    for (int j = 0; j < kBitsPerHash; ++j) {
      out.index[j] = (hash >> (j * log2_bits)) & mask;
    }
    return out;
  }
  std::uint64_t stream[kBitsPerHash];
  stream[0] = hash;
  const unsigned words = (log2_bits * kBitsPerHash + 63) / 64;
  for (unsigned w = 1; w < words; ++w) stream[w] = splitmix64(stream[w - 1]);
  for (int j = 0; j < kBitsPerHash; ++j) {
    const unsigned start = j * log2_bits;
    const unsigned word = start / 64;
    const unsigned shift = start % 64;
    std::uint64_t v = stream[word] >> shift;
    if (shift + log2_bits > 64) v |= stream[word + 1] << (64 - shift);
    out.index[j] = v & mask;
  }
  return out;
}

BloomFilter::BloomFilter(std::size_t size_bytes) {
  if (size_bytes < kMinFilterBytes || !std::has_single_bit(size_bytes)) {
    throw ConfigError("bloom filter size must be a power of two >= 32 bytes, got " +
                      std::to_string(size_bytes));
  }
  const unsigned log2_bytes = static_cast<unsigned>(std::countr_zero(size_bytes));
  if (log2_bytes > kMaxLog2Bytes) {
    throw ConfigError("bloom filter size exceeds 2^40 bytes");
  }
  log2_bits_ = log2_bytes + 3;
  words_.assign(size_bytes / 8, 0);
}

void BloomFilter::insert_hash(std::uint64_t hash) noexcept {
  const BitPositions p = derive_positions(hash, log2_bits_);
  for (std::uint64_t i : p.index) set_bit(i);
  ++set_count_;
}

bool BloomFilter::contains_hash(std::uint64_t hash) const noexcept {
  const BitPositions p = derive_positions(hash, log2_bits_);
  for (std::uint64_t i : p.index) {
    if (!test_bit(i)) return false;
  }
  return true;
}

void BloomFilter::merge_from(const BloomFilter& src) {
  if (src.words_.size() != words_.size()) {
    throw MergeError("cannot merge bloom filters of " + std::to_string(size_bytes()) + " and " +
                     std::to_string(src.size_bytes()) + " bytes");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= src.words_[i];
  set_count_ += src.set_count_;
}

std::uint64_t BloomFilter::popcount() const noexcept {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

double BloomFilter::fill_ratio() const noexcept {
  return static_cast<double>(popcount()) / static_cast<double>(bit_count());
}

void BloomFilter::fill() noexcept { std::fill(words_.begin(), words_.end(), ~std::uint64_t{0}); }

void BloomFilter::write(std::ostream& out) const {
  detail::write_magic(out, kMagic);
  detail::write_le<std::uint32_t>(out, kVersion);
  detail::write_le<std::uint32_t>(out, log2_bits_ - 3);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(words_.data()),
              static_cast<std::streamsize>(words_.size() * 8));
  } else {
    for (std::uint64_t w : words_) detail::write_le<std::uint64_t>(out, w);
  }
  detail::check_stream(out);
}

BloomFilter BloomFilter::read(std::istream& in) {
  detail::expect_magic(in, kMagic, "bloom filter");
  const auto version = detail::read_le<std::uint32_t>(in);
  if (version != kVersion) {
    throw FormatError("unsupported bloom filter version " + std::to_string(version));
  }
  const auto log2_bytes = detail::read_le<std::uint32_t>(in);
  if (log2_bytes < 5 || log2_bytes > kMaxLog2Bytes) {
    throw FormatError("bloom filter size out of range");
  }
  BloomFilter f(std::size_t{1} << log2_bytes);
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(f.words_.data()),
                 static_cast<std::streamsize>(f.words_.size() * 8))) {
      throw FormatError("truncated bloom filter bit array");
    }
  } else {
    for (auto& w : f.words_) w = detail::read_le<std::uint64_t>(in);
  }
  return f;
}

std::uint64_t common_bits(const BloomFilter& a, const BloomFilter& b) noexcept {
  const auto wa = a.words();
  const auto wb = b.words();
  const std::size_t n = std::min(wa.size(), wb.size());
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::uint64_t>(std::popcount(wa[i] & wb[i]));
  return c;
}

}  // namespace hbft
