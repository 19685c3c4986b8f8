#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "arminer/oracle.hpp"

namespace arminer::cli {

enum ExitCode : int {
  kOk = 0,
  kDataError = 1,
  kUsageError = 2,
  kCheckMismatch = 3,
};

// Runs one invocation. `args` excludes the program name. Results go to `out`
// (or the --output file); diagnostics and usage text go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 1000;
  oracle::RandomDbParams db;
};

// The `check` loop with injectable miners. On the first mismatch it prints a
// minimized counterexample to `err` and returns kCheckMismatch.
int run_check(const CheckOptions& options, const oracle::Miner& apriori,
              const oracle::Miner& fpgrowth, std::ostream& out, std::ostream& err);

}  // namespace arminer::cli
