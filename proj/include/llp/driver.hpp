#pragma once

// Library side of the `llp` command: oracle verification and the benchmark
// matrix. The executable in tools/ only parses arguments.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "llp/baselines.hpp"
#include "llp/problems.hpp"
#include "llp/solver.hpp"

namespace llp {

/// FNV-1a 64 over the solution's little-endian bytes, index order.
std::uint64_t solution_checksum(std::span<const Value> solution) noexcept;

/// Fixed CSV schema of `llp run`.
inline constexpr const char* kCsvHeader =
    "problem,instance_spec,seed,solver,worklist,threads,delta,rep,runtime_ns,checksum,"
    "predicate_evals,advances";

/// Bad user input to a driver command (maps to exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Splits "a,b,c"; empty fields are dropped.
std::vector<std::string> split_list(const std::string& text);
/// Applies LLP_THREADS_CAP (if set): counts above the cap are clamped, then
/// duplicates removed. Throws ConfigError on a malformed cap.
std::vector<std::size_t> cap_threads(std::vector<std::size_t> threads);

using ProblemFactory = std::function<std::unique_ptr<Problem>(
    ProblemKind, const Instance&, const ProblemOptions&)>;

struct VerifyOptions {
  std::vector<ProblemKind> problems;
  std::size_t seeds = 5;
  std::size_t max_size = 200;
  std::vector<std::size_t> threads = {1, 2, 4};
  std::uint64_t first_seed = 1;
  /// Replaces make_problem, e.g. to inject a broken adapter.
  ProblemFactory factory;
};

struct VerifyReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
  int exit_code() const noexcept { return failures == 0 ? 0 : 1; }
};

/// Instance spec used by verify for (problem, seed). Sizes are drawn in
/// [1, per-problem cap], with the cap lowered to `max_size`.
std::string verify_instance_spec(ProblemKind kind, std::uint64_t seed, std::size_t max_size);

/// Every strategy at every thread count against oracle_for(problem). Prints
/// a pass/fail matrix and the first divergent index of each failure.
VerifyReport run_verify(const VerifyOptions& options, std::ostream& out);

struct RunOptions {
  ProblemKind problem = ProblemKind::Sssp;
  std::string instance_spec;
  std::uint64_t seed = 1;
  std::vector<Strategy> solvers = {Strategy::PerThreadBagPar};
  std::optional<BaselineId> baseline;
  std::vector<std::size_t> threads = {1};
  std::size_t reps = 1;
  std::optional<Value> delta;
  std::size_t chunk_size = 64;
  std::size_t tile_width = 256;
  VertexId source = 0;
  std::string csv_path;  // empty: CSV rows go to `out`
  std::string dump_path;
  bool check = false;
};

struct RunReport {
  std::size_t rows = 0;
  std::size_t check_failures = 0;
  int exit_code() const noexcept { return check_failures == 0 ? 0 : 1; }
};

/// Runs the matrix solvers x threads x reps (plus the baseline). Throws
/// ConfigError for invalid options.
RunReport run_benchmark(const RunOptions& options, std::ostream& out);

}  // namespace llp
