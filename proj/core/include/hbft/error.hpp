// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hbft {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: bad filter sizes, impossible tree budgets, bad flags.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// OR-merge of filters that do not share a geometry.
class MergeError : public Error {
 public:
  using Error::Error;
};

/// Zero-length input handed to the chunker or digester.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated serialized data (filters, digests, index snapshots).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File system failures.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A similarity plant could not be steered into its target score band.
class PlantingError : public Error {
 public:
  using Error::Error;
};

}  // namespace hbft
