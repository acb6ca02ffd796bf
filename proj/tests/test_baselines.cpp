#include <numeric>

#include "doctest.h"
#include "llp/baselines.hpp"
#include "llp/problems.hpp"
#include "test_support.hpp"

using namespace llp;
using namespace llp::testing;

namespace {

CsrGraph unit_weights(const CsrGraph& g) {
  auto edges = g.edges();
  for (auto& e : edges) e.weight = 1;
  return CsrGraph::from_edges(g.num_vertices(), edges);
}

const CsrGraph& graph_of(const Instance& inst) { return std::get<GraphInstance>(inst).graph; }

}  // namespace

TEST_CASE("baseline names round-trip") {
  for (BaselineId id : kAllBaselines) CHECK(parse_baseline(to_string(id)) == id);
  CHECK(to_string(BaselineId::DeltaStepping) == "delta-stepping");
  CHECK_FALSE(parse_baseline("bellman-ford").has_value());
}

TEST_CASE("oracle_for maps each problem to a sequential baseline of that problem") {
  CHECK(oracle_for(ProblemKind::Sssp) == BaselineId::DijkstraHeap);
  CHECK(oracle_for(ProblemKind::StableMarriage) == BaselineId::GaleShapleySeq);
  CHECK(oracle_for(ProblemKind::Knapsack) == BaselineId::DpRowKnapsack);
  for (ProblemKind k : kAllProblems) CHECK(problem_of(oracle_for(k)) == k);
}

TEST_CASE("dijkstra on the example graph") {
  CHECK(dijkstra(example_graph(), 0) == std::vector<Value>{0, 2, 5, 3});
  CHECK(run_baseline(Instance{GraphInstance{example_graph()}}, BaselineId::DijkstraHeap) ==
        std::vector<Value>{0, 2, 5, 3});
}

TEST_CASE("floyd-warshall closure of a->b->c") {
  const std::vector<Edge> edges = {{0, 1, 1}, {1, 2, 1}};
  const auto g = CsrGraph::from_edges(3, edges);
  for (std::size_t t : {1, 2, 4})
    CHECK(floyd_warshall(g, t) == std::vector<Value>{0b110, 0b100, 0});
}

TEST_CASE("gale-shapley on the 2x2 instance") {
  const MatchingInstance inst{{{0, 1}, {0, 1}}, {{1, 0}, {0, 1}}};
  CHECK(gale_shapley(inst) == std::vector<Value>{1, 0});
  for (std::size_t t : {1, 2, 4}) CHECK(gale_shapley_rounds(inst, t) == std::vector<Value>{1, 0});
}

TEST_CASE("default_delta is the smallest power of two at or above the median weight") {
  auto delta_for = [](std::vector<Value> weights) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < weights.size(); ++i)
      edges.push_back({0, static_cast<VertexId>(i + 1), weights[i]});
    return default_delta(CsrGraph::from_edges(weights.size() + 1, edges));
  };
  CHECK(default_delta(CsrGraph::from_edges(3, {})) == 1);
  CHECK(delta_for({1}) == 1);
  CHECK(delta_for({5}) == 8);
  CHECK(delta_for({1, 16, 100}) == 16);
  CHECK(delta_for({3, 3, 9, 17, 33}) == 16);
}

TEST_CASE("serial references agree with the test oracles on 100 instances") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto g = graph_of(generate("randgraph:n=" + std::to_string(seed * 2) + ",m=" +
                                         std::to_string(seed * 5) + ",directed=" +
                                         std::to_string(seed % 2),
                                     seed));
    REQUIRE(dijkstra(g, 0) == bellman_ford(g, 0));
    REQUIRE(bfs_levels(g, 0) == bellman_ford(unit_weights(g), 0));

    const auto sm = std::get<MatchingInstance>(generate("sm:n=" + std::to_string(1 + seed % 7), seed));
    REQUIRE(gale_shapley(sm) == brute_force_man_optimal(sm));

    const auto job = std::get<JobInstance>(generate("dag:n=" + std::to_string(seed) + ",p=0.1", seed));
    REQUIRE(topo_longest_path(job) == recursive_finish_times(job));
  }
}

TEST_CASE("parallel baselines agree with their serial counterparts") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto g = graph_of(generate("randgraph:n=300,m=1200,wmax=200", seed));
    const auto unit = unit_weights(g);
    const auto sm = std::get<MatchingInstance>(generate("sm:n=60", seed));
    const auto job = std::get<JobInstance>(generate("dag:n=150,p=0.05", seed));
    const auto sum = std::get<ReduceInstance>(generate("reduce:n=" + std::to_string(seed * 37), seed));
    const auto closure = graph_of(generate("closuredag:n=90,p=0.04", seed));
    const auto knap = std::get<KnapsackInstance>(
        generate("knap:n=" + std::to_string(1 + seed % 14) + ",cap=120,wmax=30", seed));

    const auto dist = dijkstra(g, 0);
    for (std::size_t t : {1, 2, 4}) {
      CAPTURE(t);
      for (Value delta : {1, 2, 8, 64}) REQUIRE(delta_stepping(g, 0, delta, t) == dist);
      REQUIRE(delta_stepping(g, 0, default_delta(g), t) == dist);
      REQUIRE(bfs_levels_mt(unit, 0, t) == bfs_levels(g, 0));
      REQUIRE(gale_shapley_rounds(sm, t) == gale_shapley(sm));
      REQUIRE(topo_levels_par(job, t) == topo_longest_path(job));
      REQUIRE(tree_reduce(sum.values, t) ==
              std::vector<Value>{std::accumulate(sum.values.begin(), sum.values.end(), Value{0})});
      REQUIRE(floyd_warshall(closure, t) == dfs_closure(closure));
      REQUIRE(dp_row_knapsack(knap, t) == exhaustive_knapsack(knap));
    }
  }
}

TEST_CASE("tree reduce of a single value and wrapping sums") {
  const std::vector<Value> one = {42};
  CHECK(tree_reduce(one, 4) == std::vector<Value>{42});
  const std::vector<Value> wrap = {kInfinity, 2};
  CHECK(tree_reduce(wrap, 2) == std::vector<Value>{1});
}

TEST_CASE("cycles are malformed for the job baselines") {
  const std::vector<Edge> edges = {{0, 1, 1}, {1, 0, 1}};
  const JobInstance job{CsrGraph::from_edges(2, edges), {1, 1}};
  CHECK_THROWS_AS(topo_longest_path(job), MalformedInstance);
  CHECK_THROWS_AS(topo_levels_par(job, 2), MalformedInstance);
}

TEST_CASE("malformed preference lists are rejected by both GS baselines") {
  const MatchingInstance bad{{{0, 0}, {0, 1}}, {{0, 1}, {0, 1}}};
  CHECK_THROWS_AS(gale_shapley(bad), MalformedInstance);
  CHECK_THROWS_AS(gale_shapley_rounds(bad, 2), MalformedInstance);
}

TEST_CASE("run_baseline checks instance kind and thread count") {
  const Instance graph = GraphInstance{example_graph()};
  const Instance sm = MatchingInstance{{{0}}, {{0}}};
  CHECK_THROWS_AS(run_baseline(sm, BaselineId::DijkstraHeap), MismatchedInstance);
  CHECK_THROWS_AS(run_baseline(graph, BaselineId::GaleShapleySeq), MismatchedInstance);
  CHECK_THROWS_AS(run_baseline(graph, BaselineId::DijkstraHeap, {.threads = 2}),
                  std::invalid_argument);
  CHECK(run_baseline(graph, BaselineId::DeltaStepping, {.threads = 2, .delta = 4}) ==
        std::vector<Value>{0, 2, 5, 3});
  CHECK(run_baseline(graph, BaselineId::BfsMtQueue, {.threads = 2}) ==
        std::vector<Value>{0, 1, 2, 1});
  CHECK(run_baseline(sm, BaselineId::GaleShapleyRounds, {.threads = 2}) == std::vector<Value>{0});
}
