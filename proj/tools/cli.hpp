// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace hbft::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoMatches = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Run the hbft command line. `args` includes the program name.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hbft::cli
