#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls into the adapters or the library baselines.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "llp/core.hpp"
#include "llp/csr_graph.hpp"
#include "llp/instances.hpp"
#include "llp/prng.hpp"

namespace llp::testing {

// Every index climbs to `goal`; bound caps it at `limit`.
class Climb final : public Problem {
 public:
  Climb(std::size_t n, Value goal, Value limit) : n_(n), goal_(goal), bound_(n, limit) {}
  std::string_view name() const override { return "climb"; }
  std::size_t size() const override { return n_; }
  Lattice lattice() const override { return Lattice::MaxValue; }
  std::span<const Value> bound() const override { return bound_; }
  GlobalState init_global_state() const override { return GlobalState(n_, 0, n_); }
  void initial_states_to_process(const GlobalState&, WorkSink& sink) const override {
    for (std::size_t i = 0; i < n_; ++i) sink.push({i, 0});
  }
  bool is_forbidden(const GlobalState& s, std::size_t i) const override {
    return s.read(i) < goal_;
  }
  bool advance(GlobalState& s, std::size_t i, WorkSink& sink) const override {
    const Value next = s.read(i) + 1;
    require_within_bound(i, next);
    s.update(i, next, Order::Max);
    sink.push({i, 0});
    return true;
  }

 private:
  std::size_t n_;
  Value goal_;
  std::vector<Value> bound_;
};

// Four vertices, undirected: 0-1 (2), 0-3 (3), 3-2 (3), 2-1 (3).
inline CsrGraph example_graph() {
  const std::vector<Edge> edges = {{0, 1, 2}, {0, 3, 3}, {3, 2, 3}, {2, 1, 3}};
  return CsrGraph::from_edges(4, edges).symmetrized();
}

// Bellman-Ford relaxation to a fixed point.
inline std::vector<Value> bellman_ford(const CsrGraph& g, VertexId source) {
  std::vector<Value> d(g.num_vertices(), kInfinity);
  d[source] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : g.edges()) {
      if (d[e.from] == kInfinity) continue;
      if (d[e.from] + e.weight < d[e.to]) {
        d[e.to] = d[e.from] + e.weight;
        changed = true;
      }
    }
  }
  return d;
}

// Reachability over non-empty paths by DFS from every vertex; same packed
// row layout as the closure adapter.
inline std::vector<Value> dfs_closure(const CsrGraph& g) {
  const std::size_t n = g.num_vertices();
  const std::size_t words = (n + 63) / 64;
  std::vector<Value> rows(n * words, 0);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<bool> seen(n, false);
    std::vector<VertexId> stack(g.neighbors(u).begin(), g.neighbors(u).end());
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = true;
      rows[u * words + v / 64] |= Value{1} << (v % 64);
      for (VertexId x : g.neighbors(v)) stack.push_back(x);
    }
  }
  return rows;
}

// Longest finishing time by memoised recursion over predecessors.
inline std::vector<Value> recursive_finish_times(const JobInstance& inst) {
  const std::size_t n = inst.durations.size();
  const CsrGraph parents = inst.graph.transpose();
  std::vector<Value> memo(n, 0);
  std::vector<bool> done(n, false);
  std::function<Value(std::size_t)> finish = [&](std::size_t j) -> Value {
    if (done[j]) return memo[j];
    Value start = 0;
    for (VertexId p : parents.neighbors(j)) start = std::max(start, finish(p));
    done[j] = true;
    return memo[j] = start + inst.durations[j];
  };
  for (std::size_t j = 0; j < n; ++j) finish(j);
  return memo;
}

// Best value over every subset of items, for each capacity 0..C.
inline std::vector<Value> exhaustive_knapsack(const KnapsackInstance& inst) {
  const std::size_t n = inst.weights.size();
  std::vector<Value> best(inst.capacity + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Value w = 0;
    Value v = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        w += inst.weights[i];
        v += inst.values[i];
      }
    for (Value c = w; c <= inst.capacity; ++c) best[c] = std::max(best[c], v);
  }
  return best;
}

inline std::vector<std::size_t> woman_ranks(const std::vector<std::uint32_t>& list) {
  std::vector<std::size_t> rank(list.size());
  for (std::size_t pos = 0; pos < list.size(); ++pos) rank[list[pos]] = pos;
  return rank;
}

// Number of blocking pairs of a matching given as proposal indices; a
// non-perfect matching counts as one extra violation.
inline std::size_t blocking_pairs(const MatchingInstance& inst,
                                  const std::vector<Value>& proposal) {
  const std::size_t n = inst.men.size();
  std::vector<std::size_t> wife(n), husband(n, n);
  std::size_t violations = 0;
  for (std::size_t m = 0; m < n; ++m) {
    wife[m] = inst.men[m][proposal[m]];
    if (husband[wife[m]] != n) ++violations;
    husband[wife[m]] = m;
  }
  if (violations) return violations;
  std::vector<std::vector<std::size_t>> rank;
  for (const auto& list : inst.women) rank.push_back(woman_ranks(list));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < proposal[m]; ++k) {
      const std::size_t w = inst.men[m][k];
      if (rank[w][m] < rank[w][husband[w]]) ++violations;
    }
  }
  return violations;
}

// Man-optimal stable matching by enumerating every perfect matching.
inline std::vector<Value> brute_force_man_optimal(const MatchingInstance& inst) {
  const std::size_t n = inst.men.size();
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
  std::vector<Value> best(n, kInfinity);
  do {
    std::vector<Value> proposal(n);
    for (std::size_t m = 0; m < n; ++m)
      proposal[m] = static_cast<Value>(
          std::find(inst.men[m].begin(), inst.men[m].end(), perm[m]) - inst.men[m].begin());
    if (blocking_pairs(inst, proposal) == 0)
      for (std::size_t m = 0; m < n; ++m) best[m] = std::min(best[m], proposal[m]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<std::uint8_t> to_bytes(const std::vector<Value>& v) {
  std::vector<std::uint8_t> out;
  for (Value x : v)
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(x >> (8 * b)));
  return out;
}

// Runs the bag loop on one thread, popping a uniformly random pending item
// each step, and counts cells that moved against the lattice order between
// consecutive snapshots. Returns {regressions, final solution}.
struct ShimRun {
  std::size_t regressions = 0;
  std::vector<Value> solution;
  std::size_t forbidden_at_exit = 0;
};

inline ShimRun recording_shim_run(const Problem& problem, std::uint64_t seed) {
  Prng rng(seed);
  GlobalState state = problem.init_global_state();
  VectorSink bag;
  problem.initial_states_to_process(state, bag);
  ShimRun run;
  std::vector<Value> before = state.solution.snapshot();
  while (!bag.items.empty()) {
    const std::size_t pick = rng.uniform(0, bag.items.size() - 1);
    std::swap(bag.items[pick], bag.items.back());
    const WorkItem item = bag.items.back();
    bag.items.pop_back();
    problem.ensure(state, item.index, bag);
    std::vector<Value> after = state.solution.snapshot();
    for (std::size_t i = 0; i < after.size(); ++i)
      if (!lattice_precedes(problem.lattice(), before[i], after[i])) ++run.regressions;
    before = std::move(after);
  }
  problem.check_complete(state);
  run.forbidden_at_exit = count_forbidden(problem, state);
  run.solution = problem.final_solution(state);
  return run;
}

}  // namespace llp::testing
