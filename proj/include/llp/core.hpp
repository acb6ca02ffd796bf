#pragma once

// Lattice model shared by every problem: atomically updatable global state,
// monotone update helpers, fixed-state memoization and the adapter contract.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace llp {

using Value = std::uint64_t;

inline constexpr Value kInfinity = std::numeric_limits<Value>::max();

constexpr Value saturating_add(Value a, Value b) noexcept {
  return (a > kInfinity - b) ? kInfinity : a + b;
}

/// Raised when an advance would move a coordinate past its bound T[j].
class Infeasible : public std::runtime_error {
 public:
  Infeasible(std::size_t index, Value required, Value bound);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Raised when an instance violates an adapter's structural precondition
/// (for example a cyclic job graph).
class MalformedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Order { Min, Max };

/// Direction in which a problem's coordinates move.
enum class Lattice {
  MinValue,  // values only decrease (distances, levels)
  MaxValue,  // values only increase (indices, completion times, DP values)
  BitUnion,  // bits are only ever added (reachability words)
};

/// True iff `after` is at or above `before` in the lattice order.
bool lattice_precedes(Lattice lattice, Value before, Value after) noexcept;

struct UpdateOutcome {
  bool updated = false;  // cell strictly improved
  Value previous = 0;    // displaced value if updated, else the observed value
  unsigned retries = 0;  // failed conditional replaces
};

/// Moves `cell` toward `candidate` in `order`; a stale candidate never
/// regresses the cell.
UpdateOutcome monotone_update(std::atomic<Value>& cell, Value candidate,
                              Order order) noexcept;

/// Fixed-size array of atomic cells.
class AtomicArray {
 public:
  AtomicArray() = default;
  explicit AtomicArray(std::size_t size, Value init = 0);

  std::size_t size() const noexcept { return size_; }
  std::atomic<Value>& operator[](std::size_t i) noexcept { return cells_[i]; }
  const std::atomic<Value>& operator[](std::size_t i) const noexcept {
    return cells_[i];
  }
  Value load(std::size_t i) const noexcept {
    return cells_[i].load(std::memory_order_acquire);
  }
  void store(std::size_t i, Value v) noexcept {
    cells_[i].store(v, std::memory_order_release);
  }
  std::vector<Value> snapshot() const;

 private:
  std::unique_ptr<std::atomic<Value>[]> cells_;
  std::size_t size_ = 0;
};

/// Lock-free bit vector of indices that can never become forbidden again.
class FixedVector {
 public:
  FixedVector() = default;
  explicit FixedVector(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool is_fixed(std::size_t i) const noexcept;
  /// True iff this call moved the bit from unset to set.
  bool mark(std::size_t i) noexcept;
  std::size_t count() const noexcept;

 private:
  std::unique_ptr<std::atomic<std::uint64_t>[]> words_;
  std::size_t size_ = 0;
};

struct StatsSnapshot {
  std::uint64_t predicate_evaluations = 0;
  std::uint64_t advances = 0;
  std::uint64_t failed_cas = 0;
};

// Relaxed counters. Exact when a single thread touches them.
class Stats {
 public:
  Stats() = default;
  Stats(const Stats& other) noexcept { *this = other; }
  Stats& operator=(const Stats& other) noexcept;

  void add_evaluations(std::uint64_t n = 1) noexcept {
    evaluations_.value.fetch_add(n, std::memory_order_relaxed);
  }
  void add_advances(std::uint64_t n = 1) noexcept {
    advances_.value.fetch_add(n, std::memory_order_relaxed);
  }
  void add_failed_cas(std::uint64_t n = 1) noexcept {
    if (n != 0) failed_cas_.value.fetch_add(n, std::memory_order_relaxed);
  }
  StatsSnapshot snapshot() const noexcept;

 private:
  struct alignas(64) Counter {
    std::atomic<std::uint64_t> value{0};
  };
  Counter evaluations_;
  Counter advances_;
  Counter failed_cas_;
};

/// Shared state G plus problem-owned auxiliary arrays.
class GlobalState {
 public:
  GlobalState() = default;
  GlobalState(std::size_t cells, Value init, std::size_t coordinates);

  AtomicArray solution;
  FixedVector fixed;
  std::vector<AtomicArray> aux;
  Stats stats;

  Value read(std::size_t i) const noexcept { return solution.load(i); }
  /// monotone_update on a solution cell, counting failed replaces.
  UpdateOutcome update(std::size_t i, Value candidate, Order order) noexcept;
  /// Atomically ORs `bits` into a solution cell; true iff any bit was new.
  bool merge_bits(std::size_t i, Value bits) noexcept;
  bool mark_fixed(std::size_t i) noexcept { return fixed.mark(i); }
};

struct WorkItem {
  std::size_t index = 0;
  Value priority = 0;  // scheduling hint only

  friend bool operator==(const WorkItem&, const WorkItem&) = default;
};

/// Where advance() reports indices that may have become forbidden.
class WorkSink {
 public:
  virtual ~WorkSink() = default;
  virtual void push(WorkItem item) = 0;
  virtual void push_all(std::span<const WorkItem> items) {
    for (const auto& item : items) push(item);
  }
};

class NullSink final : public WorkSink {
 public:
  void push(WorkItem) override {}
  void push_all(std::span<const WorkItem>) override {}
};

/// Collects pushes into a vector; used for seeding and in tests.
class VectorSink final : public WorkSink {
 public:
  void push(WorkItem item) override { items.push_back(item); }
  void push_all(std::span<const WorkItem> batch) override {
    items.insert(items.end(), batch.begin(), batch.end());
  }
  std::vector<WorkItem> items;
};

/// A lattice-linear predicate together with its advance rule.
///
/// is_forbidden must not mutate the state; advance only moves coordinates
/// forward and must be safe under concurrent calls on the same index.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string_view name() const = 0;
  /// Number of coordinates (indices handed to is_forbidden/advance).
  virtual std::size_t size() const = 0;
  virtual Lattice lattice() const = 0;
  /// Per-index upper bound T; empty when the problem is unbounded.
  virtual std::span<const Value> bound() const { return {}; }

  virtual GlobalState init_global_state() const = 0;
  virtual void initial_states_to_process(const GlobalState& state,
                                         WorkSink& sink) const = 0;
  virtual bool is_forbidden(const GlobalState& state,
                            std::size_t index) const = 0;
  /// Returns true iff the state changed.
  virtual bool advance(GlobalState& state, std::size_t index,
                       WorkSink& sink) const = 0;
  /// is_forbidden then advance; skips fixed indices.
  virtual bool ensure(GlobalState& state, std::size_t index,
                      WorkSink& sink) const;
  virtual std::vector<Value> final_solution(const GlobalState& state) const;
  /// Throws MalformedInstance if the state cannot be a complete solution.
  virtual void check_complete(const GlobalState&) const {}

 protected:
  /// Throws Infeasible when `target` exceeds bound()[index].
  void require_within_bound(std::size_t index, Value target) const;
};

/// Number of indices for which is_forbidden holds; does not touch stats.
std::size_t count_forbidden(const Problem& problem, const GlobalState& state);

}  // namespace llp
