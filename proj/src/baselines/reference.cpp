#include <functional>
#include <queue>

#include "llp/baselines.hpp"

namespace llp {

std::vector<Value> dijkstra(const CsrGraph& graph, VertexId source) {
  const std::size_t n = graph.num_vertices();
  if (source >= n) throw std::invalid_argument("source vertex out of range");
  std::vector<Value> dist(n, kInfinity);
  using Entry = std::pair<Value, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) continue;
    const auto nbrs = graph.neighbors(v);
    const auto ws = graph.weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const Value nd = saturating_add(d, ws[k]);
      if (nd < dist[nbrs[k]]) {
        dist[nbrs[k]] = nd;
        heap.push({nd, nbrs[k]});
      }
    }
  }
  return dist;
}

std::vector<Value> bfs_levels(const CsrGraph& graph, VertexId source) {
  const std::size_t n = graph.num_vertices();
  if (source >= n) throw std::invalid_argument("source vertex out of range");
  std::vector<Value> level(n, kInfinity);
  std::queue<VertexId> frontier;
  level[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    for (VertexId u : graph.neighbors(v)) {
      if (level[u] == kInfinity) {
        level[u] = level[v] + 1;
        frontier.push(u);
      }
    }
  }
  return level;
}

std::vector<Value> gale_shapley(const MatchingInstance& instance) {
  validate_preferences(instance);
  const std::size_t n = instance.men.size();
  std::vector<std::size_t> rank(n * n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t pos = 0; pos < n; ++pos) rank[w * n + instance.women[w][pos]] = pos;

  constexpr std::size_t kNobody = static_cast<std::size_t>(-1);
  std::vector<Value> next(n, 0);
  std::vector<std::size_t> partner(n, kNobody);
  std::vector<std::size_t> free_men;
  for (std::size_t m = n; m-- > 0;) free_men.push_back(m);
  while (!free_men.empty()) {
    const std::size_t m = free_men.back();
    free_men.pop_back();
    const std::size_t w = instance.men[m][next[m]];
    const std::size_t current = partner[w];
    if (current == kNobody) {
      partner[w] = m;
    } else if (rank[w * n + m] < rank[w * n + current]) {
      partner[w] = m;
      ++next[current];
      free_men.push_back(current);
    } else {
      ++next[m];
      free_men.push_back(m);
    }
  }
  return next;
}

std::vector<Value> topo_longest_path(const JobInstance& instance) {
  const CsrGraph& g = instance.graph;
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> indegree(n, 0);
  for (VertexId c : g.targets()) ++indegree[c];
  std::vector<Value> start(n, 0);
  std::vector<Value> finish(n, 0);
  std::queue<VertexId> ready;
  for (std::size_t j = 0; j < n; ++j)
    if (indegree[j] == 0) ready.push(static_cast<VertexId>(j));
  std::size_t done = 0;
  while (!ready.empty()) {
    const VertexId j = ready.front();
    ready.pop();
    ++done;
    finish[j] = saturating_add(start[j], instance.durations[j]);
    for (VertexId c : g.neighbors(j)) {
      start[c] = std::max(start[c], finish[j]);
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (done != n) throw MalformedInstance("job graph has a cycle");
  return finish;
}

}  // namespace llp
