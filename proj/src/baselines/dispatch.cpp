#include <string>

#include "llp/baselines.hpp"

namespace llp {

std::string_view to_string(BaselineId id) noexcept {
  switch (id) {
    case BaselineId::DijkstraHeap: return "dijkstra";
    case BaselineId::DeltaStepping: return "delta-stepping";
    case BaselineId::BfsSeq: return "bfs-seq";
    case BaselineId::BfsMtQueue: return "bfs-mt";
    case BaselineId::GaleShapleySeq: return "gs-seq";
    case BaselineId::GaleShapleyRounds: return "gs-rounds";
    case BaselineId::TopoSortSeq: return "topo-seq";
    case BaselineId::TopoLevelsPar: return "topo-levels";
    case BaselineId::BinaryTreeReduce: return "tree-reduce";
    case BaselineId::FloydWarshallPar: return "floyd-warshall";
    case BaselineId::DpRowKnapsack: return "dp-rows";
  }
  return "?";
}

std::optional<BaselineId> parse_baseline(std::string_view name) noexcept {
  for (BaselineId id : kAllBaselines)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

bool is_sequential(BaselineId id) noexcept {
  switch (id) {
    case BaselineId::DijkstraHeap:
    case BaselineId::BfsSeq:
    case BaselineId::GaleShapleySeq:
    case BaselineId::TopoSortSeq:
      return true;
    default:
      return false;
  }
}

ProblemKind problem_of(BaselineId id) noexcept {
  switch (id) {
    case BaselineId::DijkstraHeap:
    case BaselineId::DeltaStepping: return ProblemKind::Sssp;
    case BaselineId::BfsSeq:
    case BaselineId::BfsMtQueue: return ProblemKind::Bfs;
    case BaselineId::GaleShapleySeq:
    case BaselineId::GaleShapleyRounds: return ProblemKind::StableMarriage;
    case BaselineId::TopoSortSeq:
    case BaselineId::TopoLevelsPar: return ProblemKind::JobScheduling;
    case BaselineId::BinaryTreeReduce: return ProblemKind::Reduce;
    case BaselineId::FloydWarshallPar: return ProblemKind::Closure;
    case BaselineId::DpRowKnapsack: return ProblemKind::Knapsack;
  }
  return ProblemKind::Sssp;
}

BaselineId oracle_for(ProblemKind kind) noexcept {
  switch (kind) {
    case ProblemKind::Sssp: return BaselineId::DijkstraHeap;
    case ProblemKind::Bfs: return BaselineId::BfsSeq;
    case ProblemKind::StableMarriage: return BaselineId::GaleShapleySeq;
    case ProblemKind::JobScheduling: return BaselineId::TopoSortSeq;
    case ProblemKind::Reduce: return BaselineId::BinaryTreeReduce;
    case ProblemKind::Closure: return BaselineId::FloydWarshallPar;
    case ProblemKind::Knapsack: return BaselineId::DpRowKnapsack;
  }
  return BaselineId::DijkstraHeap;
}

namespace {

template <typename T>
const T& expect(const Instance& instance, BaselineId id) {
  if (const T* inst = std::get_if<T>(&instance)) return *inst;
  throw MismatchedInstance(std::string(to_string(id)) + " cannot run on a " +
                           std::string(instance_kind(instance)) + " instance");
}

const CsrGraph& graph_of(const Instance& instance, BaselineId id) {
  if (const auto* jobs = std::get_if<JobInstance>(&instance)) {
    if (id == BaselineId::FloydWarshallPar) return jobs->graph;
  }
  return expect<GraphInstance>(instance, id).graph;
}

}  // namespace

std::vector<Value> run_baseline(const Instance& instance, BaselineId id,
                                const BaselineOptions& options) {
  if (is_sequential(id) && options.threads != 1)
    throw std::invalid_argument(std::string(to_string(id)) + " is sequential; threads must be 1");
  const std::size_t t = options.threads;
  switch (id) {
    case BaselineId::DijkstraHeap:
      return dijkstra(graph_of(instance, id), options.source);
    case BaselineId::DeltaStepping: {
      const CsrGraph& g = graph_of(instance, id);
      return delta_stepping(g, options.source, options.delta.value_or(default_delta(g)), t);
    }
    case BaselineId::BfsSeq:
      return bfs_levels(graph_of(instance, id), options.source);
    case BaselineId::BfsMtQueue:
      return bfs_levels_mt(graph_of(instance, id), options.source, t);
    case BaselineId::GaleShapleySeq:
      return gale_shapley(expect<MatchingInstance>(instance, id));
    case BaselineId::GaleShapleyRounds:
      return gale_shapley_rounds(expect<MatchingInstance>(instance, id), t);
    case BaselineId::TopoSortSeq:
      return topo_longest_path(expect<JobInstance>(instance, id));
    case BaselineId::TopoLevelsPar:
      return topo_levels_par(expect<JobInstance>(instance, id), t);
    case BaselineId::BinaryTreeReduce:
      return tree_reduce(expect<ReduceInstance>(instance, id).values, t);
    case BaselineId::FloydWarshallPar:
      return floyd_warshall(graph_of(instance, id), t);
    case BaselineId::DpRowKnapsack:
      return dp_row_knapsack(expect<KnapsackInstance>(instance, id), t);
  }
  throw std::invalid_argument("unknown baseline");
}

}  // namespace llp
