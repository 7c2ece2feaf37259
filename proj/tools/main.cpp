// Copyright 2026 The hbft Authors
// Licensed under the Apache License, Version 2.0

#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hbft::cli::dispatch(args, std::cout, std::cerr);
}
