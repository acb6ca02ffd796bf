#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "llp/core.hpp"
#include "llp/instances.hpp"

namespace llp {

enum class ProblemKind { Sssp, Bfs, StableMarriage, JobScheduling, Reduce, Closure, Knapsack };

inline constexpr ProblemKind kAllProblems[] = {
    ProblemKind::Sssp,   ProblemKind::Bfs,     ProblemKind::StableMarriage,
    ProblemKind::JobScheduling, ProblemKind::Reduce, ProblemKind::Closure,
    ProblemKind::Knapsack,
};

/// CLI name: sssp, bfs, sm, job, reduce, closure, knap.
std::string_view to_string(ProblemKind kind) noexcept;
std::optional<ProblemKind> parse_problem_kind(std::string_view name) noexcept;

/// The instance variant does not fit the requested problem or baseline.
class MismatchedInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProblemOptions {
  VertexId source = 0;           // sssp, bfs
  std::size_t tile_width = 256;  // knap
};

std::unique_ptr<Problem> make_problem(ProblemKind kind, const Instance& instance,
                                      const ProblemOptions& options = {});

/// Distances from `source`; unreachable vertices stay at kInfinity.
std::unique_ptr<Problem> make_sssp(CsrGraph graph, VertexId source = 0);
/// Hop levels from `source`; edge weights are ignored.
std::unique_ptr<Problem> make_bfs(CsrGraph graph, VertexId source = 0);
/// Solution: index into each man's list. Throws MalformedInstance unless
/// every list is a permutation of 0..n-1.
std::unique_ptr<Problem> make_stable_marriage(MatchingInstance instance);
/// Solution: earliest completion times. A cyclic graph raises
/// MalformedInstance from check_complete.
std::unique_ptr<Problem> make_job_scheduling(JobInstance instance);
/// Solution: a single cell holding the sum (wrapping on overflow).
std::unique_ptr<Problem> make_reduce(std::vector<Value> values);
/// Solution: row-major reachability bits, closure_row_words(n) words per row.
/// (u, v) is set iff a non-empty path leads from u to v.
std::unique_ptr<Problem> make_closure(CsrGraph graph);
/// Solution: the last DP row, best value for every capacity 0..C.
std::unique_ptr<Problem> make_knapsack(KnapsackInstance instance,
                                       std::size_t tile_width = 256);

constexpr std::size_t closure_row_words(std::size_t n) noexcept { return (n + 63) / 64; }

}  // namespace llp
