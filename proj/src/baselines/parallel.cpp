#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include <omp.h>
#include <tbb/concurrent_queue.h>

#include "llp/baselines.hpp"

namespace llp {

namespace {

int team(std::size_t threads) {
  if (threads == 0) throw std::invalid_argument("threads must be at least 1");
  omp_set_dynamic(0);
  return static_cast<int>(threads);
}

// Per-thread output buffers concatenated after a parallel region.
class Gather {
 public:
  explicit Gather(int threads) : parts_(static_cast<std::size_t>(threads)) {}
  std::vector<VertexId>& mine() { return parts_[static_cast<std::size_t>(omp_get_thread_num())]; }
  template <typename Fn>
  void drain(Fn&& fn) {
    for (auto& part : parts_) {
      for (VertexId v : part) fn(v);
      part.clear();
    }
  }

 private:
  std::vector<std::vector<VertexId>> parts_;
};

}  // namespace

Value default_delta(const CsrGraph& graph) {
  std::vector<Value> ws = graph.edge_weights();
  if (ws.empty()) return 1;
  auto mid = ws.begin() + static_cast<std::ptrdiff_t>((ws.size() - 1) / 2);
  std::nth_element(ws.begin(), mid, ws.end());
  return std::bit_ceil(std::max<Value>(*mid, 1));
}

std::vector<Value> delta_stepping(const CsrGraph& graph, VertexId source, Value delta,
                                  std::size_t threads) {
  const std::size_t n = graph.num_vertices();
  if (source >= n) throw std::invalid_argument("source vertex out of range");
  if (delta == 0) throw std::invalid_argument("delta must be at least 1");
  const int nt = team(threads);

  AtomicArray dist(n, kInfinity);
  dist.store(source, 0);
  std::vector<std::vector<VertexId>> buckets(1, std::vector<VertexId>{source});
  Gather improved(nt);
  auto file = [&](VertexId v) {
    const std::size_t b = static_cast<std::size_t>(dist.load(v) / delta);
    if (b >= buckets.size()) buckets.resize(b + 1);
    buckets[b].push_back(v);
  };
  // Relaxes edges of `from` whose weight is light (<= delta) or heavy.
  auto relax = [&](const std::vector<VertexId>& from, bool light) {
    const auto count = static_cast<std::int64_t>(from.size());
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) {
      const VertexId v = from[static_cast<std::size_t>(i)];
      const Value dv = dist.load(v);
      const auto nbrs = graph.neighbors(v);
      const auto ws = graph.weights(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if ((ws[k] <= delta) != light) continue;
        if (monotone_update(dist[nbrs[k]], saturating_add(dv, ws[k]), Order::Min).updated)
          improved.mine().push_back(nbrs[k]);
      }
    }
    improved.drain(file);
  };

  std::vector<VertexId> frontier;
  std::vector<VertexId> settled;
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    settled.clear();
    while (!buckets[i].empty()) {
      frontier.clear();
      std::swap(frontier, buckets[i]);
      std::erase_if(frontier, [&](VertexId v) { return dist.load(v) / delta != i; });
      std::sort(frontier.begin(), frontier.end());
      frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
      settled.insert(settled.end(), frontier.begin(), frontier.end());
      relax(frontier, true);
    }
    std::sort(settled.begin(), settled.end());
    settled.erase(std::unique(settled.begin(), settled.end()), settled.end());
    relax(settled, false);
  }
  return dist.snapshot();
}

std::vector<Value> bfs_levels_mt(const CsrGraph& graph, VertexId source, std::size_t threads) {
  const std::size_t n = graph.num_vertices();
  if (source >= n) throw std::invalid_argument("source vertex out of range");
  const int nt = team(threads);

  AtomicArray level(n, kInfinity);
  level.store(source, 0);
  tbb::concurrent_queue<VertexId> queue;
  // Items pushed but not yet fully processed.
  std::atomic<std::int64_t> outstanding{1};
  queue.push(source);
#pragma omp parallel num_threads(nt)
  {
    VertexId v = 0;
    while (outstanding.load(std::memory_order_acquire) > 0) {
      if (!queue.try_pop(v)) {
        std::this_thread::yield();
        continue;
      }
      const Value next = level.load(v) + 1;
      for (VertexId u : graph.neighbors(v)) {
        if (monotone_update(level[u], next, Order::Min).updated) {
          outstanding.fetch_add(1, std::memory_order_acq_rel);
          queue.push(u);
        }
      }
      outstanding.fetch_sub(1, std::memory_order_acq_rel);
    }
  }
  return level.snapshot();
}

std::vector<Value> gale_shapley_rounds(const MatchingInstance& instance, std::size_t threads) {
  const std::size_t n = instance.men.size();
  const int nt = team(threads);
  validate_preferences(instance);
  std::vector<Value> rank(n * n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t pos = 0; pos < n; ++pos) rank[w * n + instance.women[w][pos]] = pos;

  constexpr Value kVacant = kInfinity;
  auto man_of = [](Value key) { return static_cast<std::size_t>(key & 0xFFFFFFFFu); };
  std::vector<Value> next(n, 0);
  AtomicArray holder(n, kVacant);          // (rank << 32) | man, min wins
  std::vector<Value> settled(n, kVacant);  // holder at the end of the previous round
  std::vector<VertexId> free_men(n);
  for (std::size_t m = 0; m < n; ++m) free_men[m] = static_cast<VertexId>(m);
  tbb::concurrent_queue<VertexId> rejected;

  while (!free_men.empty()) {
    const auto count = static_cast<std::int64_t>(free_men.size());
#pragma omp parallel num_threads(nt)
    {
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < count; ++i) {
        const std::size_t m = free_men[static_cast<std::size_t>(i)];
        const std::size_t w = instance.men[m][next[m]];
        monotone_update(holder[w], (rank[w * n + m] << 32) | m, Order::Min);
      }
      // implicit barrier: every proposal of this round has landed
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < count; ++i) {
        const std::size_t m = free_men[static_cast<std::size_t>(i)];
        const std::size_t w = instance.men[m][next[m]];
        const Value now = holder.load(w);
        if (man_of(now) != m) {
          ++next[m];
          rejected.push(static_cast<VertexId>(m));
        } else {
          if (settled[w] != kVacant) {
            const std::size_t displaced = man_of(settled[w]);
            ++next[displaced];
            rejected.push(static_cast<VertexId>(displaced));
          }
          settled[w] = now;
        }
      }
    }
    free_men.clear();
    VertexId m = 0;
    while (rejected.try_pop(m)) free_men.push_back(m);
  }
  return next;
}

std::vector<Value> topo_levels_par(const JobInstance& instance, std::size_t threads) {
  const CsrGraph& g = instance.graph;
  const std::size_t n = g.num_vertices();
  const int nt = team(threads);
  AtomicArray remaining(n, 0);
  for (VertexId c : g.targets()) remaining[c].fetch_add(1, std::memory_order_relaxed);
  AtomicArray start(n, 0);
  std::vector<Value> finish(n, 0);
  std::vector<VertexId> frontier;
  for (std::size_t j = 0; j < n; ++j)
    if (remaining.load(j) == 0) frontier.push_back(static_cast<VertexId>(j));

  Gather ready(nt);
  std::size_t done = 0;
  while (!frontier.empty()) {
    done += frontier.size();
    const auto count = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel for num_threads(nt) schedule(dynamic, 32)
    for (std::int64_t i = 0; i < count; ++i) {
      const VertexId j = frontier[static_cast<std::size_t>(i)];
      finish[j] = saturating_add(start.load(j), instance.durations[j]);
      for (VertexId c : g.neighbors(j)) {
        monotone_update(start[c], finish[j], Order::Max);
        if (remaining[c].fetch_sub(1, std::memory_order_acq_rel) == 1)
          ready.mine().push_back(c);
      }
    }
    frontier.clear();
    ready.drain([&](VertexId v) { frontier.push_back(v); });
  }
  if (done != n) throw MalformedInstance("job graph has a cycle");
  return finish;
}

std::vector<Value> tree_reduce(std::span<const Value> values, std::size_t threads) {
  const int nt = team(threads);
  std::vector<Value> buf(values.begin(), values.end());
  const auto n = static_cast<std::int64_t>(buf.size());
  for (std::int64_t stride = 1; stride < n; stride *= 2) {
#pragma omp parallel for num_threads(nt) schedule(static)
    for (std::int64_t i = 0; i < n - stride; i += 2 * stride)
      buf[static_cast<std::size_t>(i)] += buf[static_cast<std::size_t>(i + stride)];
  }
  return {buf.empty() ? 0 : buf[0]};
}

std::vector<Value> floyd_warshall(const CsrGraph& graph, std::size_t threads) {
  const std::size_t n = graph.num_vertices();
  const std::size_t words = closure_row_words(n);
  const int nt = team(threads);
  std::vector<Value> reach(n * words, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (VertexId v : graph.neighbors(u)) reach[u * words + v / 64] |= Value{1} << (v % 64);

  const auto rows = static_cast<std::int64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Value* pivot = reach.data() + k * words;
    const Value mask = Value{1} << (k % 64);
#pragma omp parallel for num_threads(nt) schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
      if (static_cast<std::size_t>(i) == k) continue;
      Value* row = reach.data() + static_cast<std::size_t>(i) * words;
      if (!(row[k / 64] & mask)) continue;
      for (std::size_t j = 0; j < words; ++j) row[j] |= pivot[j];
    }
  }
  return reach;
}

std::vector<Value> dp_row_knapsack(const KnapsackInstance& instance, std::size_t threads) {
  const int nt = team(threads);
  const std::size_t width = static_cast<std::size_t>(instance.capacity) + 1;
  std::vector<Value> prev(width, 0);
  std::vector<Value> cur(width, 0);
  const auto cols = static_cast<std::int64_t>(width);
  for (std::size_t k = 0; k < instance.weights.size(); ++k) {
    const Value w = instance.weights[k];
    const Value v = instance.values[k];
#pragma omp parallel for num_threads(nt) schedule(static)
    for (std::int64_t c = 0; c < cols; ++c) {
      const auto cap = static_cast<std::size_t>(c);
      Value best = prev[cap];
      if (w <= cap) best = std::max(best, saturating_add(v, prev[cap - w]));
      cur[cap] = best;
    }
    std::swap(prev, cur);
  }
  return prev;
}

}  // namespace llp
