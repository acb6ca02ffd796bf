#include <set>

#include "doctest.h"
#include "llp/problems.hpp"
#include "llp/solver.hpp"
#include "test_support.hpp"

using namespace llp;
using namespace llp::testing;

namespace {

struct Run {
  Strategy strategy;
  std::size_t threads;
};

std::vector<Run> every_run(std::initializer_list<std::size_t> threads = {1, 2, 4}) {
  std::vector<Run> out;
  for (Strategy s : kAllStrategies)
    for (std::size_t t : threads)
      if (!is_single_threaded(s) || t == 1) out.push_back({s, t});
  return out;
}

std::unique_ptr<Problem> problem_for(ProblemKind kind, const std::string& spec,
                                     std::uint64_t seed) {
  return make_problem(kind, generate(spec, seed));
}

}  // namespace

TEST_CASE("strategy names round-trip") {
  for (Strategy s : kAllStrategies) CHECK(parse_strategy(to_string(s)) == s);
  CHECK(to_string(Strategy::PerThreadBagPar) == "ptwb");
  CHECK_FALSE(parse_strategy("fifo").has_value());
  CHECK(is_single_threaded(Strategy::CyclicST));
  CHECK(is_single_threaded(Strategy::BagST));
  CHECK_FALSE(is_single_threaded(Strategy::AllIndicesPar));
}

TEST_CASE("example graph gives [0,2,5,3] under every strategy and thread count") {
  const auto problem = make_sssp(example_graph(), 0);
  for (const Run& r : every_run()) {
    CAPTURE(to_string(r.strategy));
    CAPTURE(r.threads);
    const auto result = solve(*problem, {.strategy = r.strategy, .threads = r.threads});
    CHECK(result.solution == std::vector<Value>{0, 2, 5, 3});
    CHECK(result.forbidden_at_exit == 0);
  }
}

TEST_CASE("sequential examples") {
  const auto chain = problem_for(ProblemKind::Sssp, "chain:5", 1);
  CHECK(solve_sequential(*chain, Strategy::CyclicST).solution ==
        std::vector<Value>{0, 1, 2, 3, 4});
  CHECK(solve_sequential(*chain, Strategy::BagST).solution == std::vector<Value>{0, 1, 2, 3, 4});
  const auto sum = make_reduce({1, 2, 3, 4});
  CHECK(solve_sequential(*sum, Strategy::BagST).solution == std::vector<Value>{10});
  CHECK_THROWS_AS(solve_sequential(*sum, Strategy::PerThreadBagPar), std::invalid_argument);
}

TEST_CASE("parallel examples") {
  const auto sm_inst = std::get<MatchingInstance>(generate("sm:n=1000", 7));
  const auto sm = make_stable_marriage(sm_inst);
  const auto sm_seq = solve_sequential(*sm, Strategy::BagST).solution;
  CHECK(blocking_pairs(sm_inst, sm_seq) == 0);
  CHECK(solve_parallel(*sm, Strategy::ChunkedFifoPar, 8).solution == sm_seq);

  const auto job_inst = std::get<JobInstance>(generate("dag:n=100,p=0.2", 3));
  const auto job = make_job_scheduling(job_inst);
  for (Strategy s : kAllStrategies) {
    if (is_single_threaded(s)) continue;
    CHECK(solve_parallel(*job, s, 4).solution == recursive_finish_times(job_inst));
  }

  const auto knap = make_knapsack({{2, 3}, {3, 4}, 5});
  CHECK(solve_parallel(*knap, Strategy::BucketsPar, 2).solution.back() == 7);
}

TEST_CASE("invalid configurations are rejected") {
  const auto problem = make_sssp(example_graph(), 0);
  CHECK_THROWS_AS(solve(*problem, {.strategy = Strategy::PerThreadBagPar, .threads = 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve(*problem, {.strategy = Strategy::BagST, .threads = 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve(*problem, {.strategy = Strategy::CyclicST, .threads = 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve(*problem, {.strategy = Strategy::BucketsPar, .threads = 1, .delta = 0}),
                  std::invalid_argument);
}

TEST_CASE("Infeasible propagates out of every strategy") {
  Climb problem(8, 5, 3);
  for (const Run& r : every_run()) {
    CAPTURE(to_string(r.strategy));
    CAPTURE(r.threads);
    CHECK_THROWS_AS(solve(problem, {.strategy = r.strategy, .threads = r.threads}), Infeasible);
  }
}

TEST_CASE("a feasible climb finishes at the goal under every strategy") {
  Climb problem(50, 5, 5);
  for (const Run& r : every_run())
    CHECK(solve(problem, {.strategy = r.strategy, .threads = r.threads}).solution ==
          std::vector<Value>(50, 5));
}

TEST_CASE("a cyclic job graph is malformed under every strategy") {
  const std::vector<Edge> edges = {{0, 1, 1}, {1, 2, 1}, {2, 1, 1}, {0, 3, 1}};
  const JobInstance inst{CsrGraph::from_edges(4, edges), {1, 2, 3, 4}};
  const auto problem = make_job_scheduling(inst);
  for (const Run& r : every_run())
    CHECK_THROWS_AS(solve(*problem, {.strategy = r.strategy, .threads = r.threads}),
                    MalformedInstance);
}

TEST_CASE("bucket shuffling, delta and chunk size do not change the result") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = generate("randgraph:n=150,m=600,wmax=50", seed);
    const auto problem = make_problem(ProblemKind::Sssp, inst);
    const auto want = bellman_ford(std::get<GraphInstance>(inst).graph, 0);
    for (std::size_t t : {1, 2, 4}) {
      for (Value delta : {1, 4, 16, 1000})
        REQUIRE(solve(*problem, {.strategy = Strategy::BucketsPar, .threads = t, .delta = delta,
                                 .bucket_shuffle_seed = seed})
                    .solution == want);
      for (std::size_t chunk : {1, 16, 256})
        REQUIRE(solve(*problem,
                      {.strategy = Strategy::ChunkedFifoPar, .threads = t, .chunk_size = chunk})
                    .solution == want);
    }
  }
}

TEST_CASE("few buckets wrap without losing work") {
  const auto inst = generate("randgraph:n=200,m=800,wmax=100", 5);
  const auto problem = make_problem(ProblemKind::Sssp, inst);
  const auto want = bellman_ford(std::get<GraphInstance>(inst).graph, 0);
  for (std::size_t buckets : {1, 2, 3})
    CHECK(solve(*problem, {.strategy = Strategy::BucketsPar, .threads = 2, .num_buckets = buckets})
              .solution == want);
}

TEST_CASE("repeated parallel runs agree on every problem") {
  const std::vector<std::pair<ProblemKind, std::string>> cases = {
      {ProblemKind::Sssp, "randgraph:n=300,m=1500"},
      {ProblemKind::Bfs, "randgraph:n=300,m=900"},
      {ProblemKind::StableMarriage, "sm:n=40"},
      {ProblemKind::JobScheduling, "dag:n=120,p=0.1"},
      {ProblemKind::Reduce, "reduce:n=333"},
      {ProblemKind::Closure, "closuredag:n=80,p=0.05"},
      {ProblemKind::Knapsack, "knap:n=20,cap=300"},
  };
  for (const auto& [kind, spec] : cases) {
    CAPTURE(spec);
    const auto problem = problem_for(kind, spec, 11);
    std::set<std::vector<Value>> outputs;
    for (const Run& r : every_run({1, 2, 4, 8}))
      for (int rep = 0; rep < 3; ++rep) {
        const auto result = solve(*problem, {.strategy = r.strategy, .threads = r.threads});
        REQUIRE(result.forbidden_at_exit == 0);
        outputs.insert(result.solution);
      }
    CHECK(outputs.size() == 1);
  }
}

TEST_CASE("random pop order never moves a cell backwards") {
  const std::vector<std::pair<ProblemKind, std::string>> cases = {
      {ProblemKind::Sssp, "randgraph:n=60,m=200"},
      {ProblemKind::Bfs, "randgraph:n=60,m=150"},
      {ProblemKind::StableMarriage, "sm:n=12"},
      {ProblemKind::JobScheduling, "dag:n=40,p=0.2"},
      {ProblemKind::Reduce, "reduce:n=37"},
      {ProblemKind::Closure, "closuredag:n=30,p=0.1"},
      {ProblemKind::Knapsack, "knap:n=8,cap=40,wmax=15"},
  };
  for (const auto& [kind, spec] : cases)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CAPTURE(spec);
      const auto problem = problem_for(kind, spec, seed);
      const auto run = recording_shim_run(*problem, seed * 977);
      REQUIRE(run.regressions == 0);
      REQUIRE(run.forbidden_at_exit == 0);
      REQUIRE(run.solution == solve(*problem, {.strategy = Strategy::BagST}).solution);
    }
}

TEST_CASE("chain:1024 predicate evaluations: cyclic is quadratic, bag is linear") {
  const auto problem = problem_for(ProblemKind::Sssp, "chain:1024", 1);
  const auto cyclic = solve(*problem, {.strategy = Strategy::CyclicST});
  const auto bag = solve(*problem, {.strategy = Strategy::BagST});
  CHECK(cyclic.solution == bag.solution);
  CHECK(bag.solution.back() == 1023);
  CHECK(cyclic.stats.predicate_evaluations >= 50 * bag.stats.predicate_evaluations);
  CHECK(bag.stats.predicate_evaluations <= 10 * 1024);
}

TEST_CASE("all-indices solver counts passes") {
  const auto problem = problem_for(ProblemKind::Sssp, "chain:16", 1);
  const auto result = solve(*problem, {.strategy = Strategy::AllIndicesPar, .threads = 2});
  CHECK(result.forbidden_at_exit == 0);
  CHECK(result.passes >= 2);
}
