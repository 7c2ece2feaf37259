// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "hbft/mrsh.hpp"
#include "hbft/tree.hpp"

namespace hbft {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path);
void write_file(const fs::path& path, ByteSpan bytes);

/// Regular files under `dir`, recursively, sorted lexicographically by path.
std::vector<fs::path> list_files(const fs::path& dir);

SimilarityDigest load_digest(const fs::path& path);
void save_digest(const fs::path& path, const SimilarityDigest& digest);

HbftIndex load_index(const fs::path& path);
void save_index(const fs::path& path, const HbftIndex& index);

/// True if the file starts with the digest magic.
bool is_digest_file(const fs::path& path);

}  // namespace hbft
