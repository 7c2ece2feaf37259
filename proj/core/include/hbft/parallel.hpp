// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <functional>

namespace hbft {

/// Worker count used when a caller passes 0.
unsigned default_workers() noexcept;

/// Run body(i) for i in [0, count) across `workers` threads.
///
/// Indices are interleaved across workers; callers that write to
/// slot i of a pre-sized output get deterministic results. The first
/// exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace hbft
