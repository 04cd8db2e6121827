#pragma once

// The bfgp command line: synth, validate, gen, bench.
//
// Exit codes: 0 success (synth: solution found; validate: every instance
// END_GOAL), 1 usage, I/O or parse error, 2 no solution / validation
// failure, 3 search budget exhausted.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gp/evaluation.hpp"

namespace gp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitBudget = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

struct BenchCell {
  std::string domain;
  std::vector<EvalFunction> config;
};

// "paper": every domain under the six single functions and both combined
// configurations. "desk": t-sum, corridor, reverse, select, find under
// (h5,f1). "smoke": t-sum and reverse under (h5,f1).
// Throws std::invalid_argument for other names.
std::vector<BenchCell> bench_suite(const std::string& name);

struct BenchOptions {
  std::string suite = "smoke";
  double timeout_s = 3600.0;
  std::uint64_t seed = 1;
  std::string programs_dir;  // empty: do not write programs
  std::size_t threads = 1;
};

// Runs each cell in its own process (when fork is available) so the memory
// column is that cell's peak RSS. Rows come back in suite order.
// Returns the CSV text: comment line, header, one row per cell.
std::string run_bench(const BenchOptions& opts, std::ostream& log);

// GP_THREADS, or 1 when unset or malformed.
std::size_t bench_threads_from_env();

}  // namespace gp
