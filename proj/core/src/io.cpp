// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include "hbft/io.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "hbft/error.hpp"

namespace hbft {

namespace {

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  return out;
}

}  // namespace

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in = open_in(path);
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size < 0) throw IoError("cannot size " + path.string());
  in.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  if (!bytes.empty() && !in.read(reinterpret_cast<char*>(bytes.data()), size)) {
    throw IoError("short read on " + path.string());
  }
  return bytes;
}

void write_file(const fs::path& path, ByteSpan bytes) {
  std::ofstream out = open_out(path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed on " + path.string());
}

std::vector<fs::path> list_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.generic_string() < b.generic_string();
  });
  return files;
}

SimilarityDigest load_digest(const fs::path& path) {
  std::ifstream in = open_in(path);
  return SimilarityDigest::read(in);
}

void save_digest(const fs::path& path, const SimilarityDigest& digest) {
  std::ofstream out = open_out(path);
  digest.write(out);
}

HbftIndex load_index(const fs::path& path) {
  std::ifstream in = open_in(path);
  return HbftIndex::read(in);
}

void save_index(const fs::path& path, const HbftIndex& index) {
  std::ofstream out = open_out(path);
  index.write(out);
}

bool is_digest_file(const fs::path& path) {
  std::ifstream in = open_in(path);
  char magic[8] = {};
  in.read(magic, sizeof magic);
  return in.gcount() == 8 && std::string(magic, 8) == std::string("HBFT-SD\0", 8);
}

}  // namespace hbft
