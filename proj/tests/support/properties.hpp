// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

// Randomized property checks. Each runs `cases` seeded cases and reports the
// first counterexample; gtest and the acceptance runner share them.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hbft::testing {

struct PropertyOutcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
};

PropertyOutcome check_bloom_no_false_negatives(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_bloom_idempotence(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_bloom_merge_algebra(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_fixed_finalize_equivalence(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_min_run_monotonicity(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_compare_symmetry_and_self(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_chunk_cover_and_determinism(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_capacity_law(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_search_subset_of_baseline(std::size_t cases, std::uint64_t seed);
PropertyOutcome check_layout_budget_law(std::size_t cases, std::uint64_t seed);

/// Chunk end offsets recomputed from scratch at every position (no rolling update).
std::vector<std::size_t> reference_chunk_ends(const std::vector<std::uint8_t>& data,
                                              std::uint32_t block_size);

}  // namespace hbft::testing
