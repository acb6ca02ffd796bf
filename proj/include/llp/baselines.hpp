#pragma once

// Reference and competitor algorithms. Each returns the same solution shape
// as the matching adapter's final_solution, so checks are plain vector
// comparisons.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "llp/instances.hpp"
#include "llp/problems.hpp"

namespace llp {

enum class BaselineId {
  DijkstraHeap,
  DeltaStepping,
  BfsSeq,
  BfsMtQueue,
  GaleShapleySeq,
  GaleShapleyRounds,
  TopoSortSeq,
  TopoLevelsPar,
  BinaryTreeReduce,
  FloydWarshallPar,
  DpRowKnapsack,
};

inline constexpr BaselineId kAllBaselines[] = {
    BaselineId::DijkstraHeap,      BaselineId::DeltaStepping,    BaselineId::BfsSeq,
    BaselineId::BfsMtQueue,        BaselineId::GaleShapleySeq,   BaselineId::GaleShapleyRounds,
    BaselineId::TopoSortSeq,       BaselineId::TopoLevelsPar,    BaselineId::BinaryTreeReduce,
    BaselineId::FloydWarshallPar,  BaselineId::DpRowKnapsack,
};

/// CLI names: dijkstra, delta-stepping, bfs-seq, bfs-mt, gs-seq, gs-rounds,
/// topo-seq, topo-levels, tree-reduce, floyd-warshall, dp-rows.
std::string_view to_string(BaselineId id) noexcept;
std::optional<BaselineId> parse_baseline(std::string_view name) noexcept;
bool is_sequential(BaselineId id) noexcept;
ProblemKind problem_of(BaselineId id) noexcept;
BaselineId oracle_for(ProblemKind kind) noexcept;

struct BaselineOptions {
  std::size_t threads = 1;
  std::optional<Value> delta;  // DeltaStepping; default_delta() when unset
  VertexId source = 0;
};

/// Throws MismatchedInstance when the instance does not fit `id`, and
/// std::invalid_argument for threads != 1 on a sequential baseline.
std::vector<Value> run_baseline(const Instance& instance, BaselineId id,
                                const BaselineOptions& options = {});

// Serial references.
std::vector<Value> dijkstra(const CsrGraph& graph, VertexId source);
std::vector<Value> bfs_levels(const CsrGraph& graph, VertexId source);
/// Man-optimal matching as an index into each man's list.
std::vector<Value> gale_shapley(const MatchingInstance& instance);
/// Earliest completion times; throws MalformedInstance on a cycle.
std::vector<Value> topo_longest_path(const JobInstance& instance);

// OpenMP competitors.
/// Smallest power of two >= the median edge weight (1 for an empty graph).
Value default_delta(const CsrGraph& graph);
std::vector<Value> delta_stepping(const CsrGraph& graph, VertexId source, Value delta,
                                  std::size_t threads);
std::vector<Value> bfs_levels_mt(const CsrGraph& graph, VertexId source, std::size_t threads);
std::vector<Value> gale_shapley_rounds(const MatchingInstance& instance, std::size_t threads);
std::vector<Value> topo_levels_par(const JobInstance& instance, std::size_t threads);
/// Wrapping sum as a one-element vector.
std::vector<Value> tree_reduce(std::span<const Value> values, std::size_t threads);
/// Row-major reachability bits, closure_row_words(n) words per row.
std::vector<Value> floyd_warshall(const CsrGraph& graph, std::size_t threads);
/// Last DP row (best value per capacity 0..C).
std::vector<Value> dp_row_knapsack(const KnapsackInstance& instance, std::size_t threads);

}  // namespace llp
