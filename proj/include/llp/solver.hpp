#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "llp/core.hpp"
#include "llp/worklist.hpp"

namespace llp {

enum class Strategy {
  CyclicST,
  BagST,
  AllIndicesPar,
  SharedBagPar,
  PerThreadBagPar,
  ChunkedFifoPar,
  BucketsPar,
};

inline constexpr Strategy kAllStrategies[] = {
    Strategy::CyclicST,        Strategy::BagST,          Strategy::AllIndicesPar,
    Strategy::SharedBagPar,    Strategy::PerThreadBagPar, Strategy::ChunkedFifoPar,
    Strategy::BucketsPar,
};

/// CLI name: cyclic, bag, allpar, swb, ptwb, ptcf, buckets.
std::string_view to_string(Strategy strategy) noexcept;
std::optional<Strategy> parse_strategy(std::string_view name) noexcept;
bool is_single_threaded(Strategy strategy) noexcept;
WorklistKind worklist_for(Strategy strategy) noexcept;

struct SolverConfig {
  Strategy strategy = Strategy::BagST;
  std::size_t threads = 1;
  Value delta = 1;               // BucketsPar
  std::size_t num_buckets = 1024;  // BucketsPar
  std::size_t chunk_size = 64;   // ChunkedFifoPar
  std::optional<std::uint64_t> bucket_shuffle_seed;
  std::uint64_t seed = 0;
  // Full is_forbidden scan after the run; its result lands in
  // SolveResult::forbidden_at_exit.
  bool verify_exit = true;
};

struct SolveResult {
  std::vector<Value> solution;
  StatsSnapshot stats;
  std::size_t forbidden_at_exit = 0;
  std::size_t passes = 0;  // CyclicST and AllIndicesPar only
};

/// Runs `config.strategy` to the fixed point. Throws Infeasible when an
/// advance exceeds the problem bound, MalformedInstance when the final state
/// is incomplete, std::invalid_argument on a bad config. The first error
/// raised by any worker wins.
SolveResult solve(const Problem& problem, const SolverConfig& config);

SolveResult solve_sequential(const Problem& problem, Strategy strategy);
SolveResult solve_parallel(const Problem& problem, Strategy strategy,
                           std::size_t threads, Value delta = 1);

}  // namespace llp
