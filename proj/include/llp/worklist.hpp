#pragma once

// Scheduling policies consumed by the solvers. Every policy exposes one
// handle per worker; a handle is both the sink advance() pushes into and the
// source the worker pops from.

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "llp/core.hpp"

namespace llp {

enum class WorklistKind {
  Null,
  SeqBag,
  SharedBag,     // SWB
  PerThreadBag,  // PTWB
  ChunkedFifo,   // PTCF
  Buckets,
};

std::string_view to_string(WorklistKind kind) noexcept;

struct WorklistPolicy {
  WorklistKind kind = WorklistKind::SeqBag;
  std::size_t num_buckets = 1024;
  Value delta = 1;
  std::size_t chunk_size = 64;
  // Buckets only: when set, items land in pseudo-random buckets. Used to
  // show bucket order never matters for correctness.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Counts items pushed but not popped (pending) and items popped whose
/// ensure has not returned (in_flight), packed into one word so a single
/// load is a consistent snapshot of both.
class QuiescenceToken {
 public:
  void add_pending(std::uint64_t n) noexcept {
    word_.fetch_add(n, std::memory_order_acq_rel);
  }
  /// A popped item moves from pending to in_flight.
  void begin_item() noexcept {
    word_.fetch_add(kInFlightUnit - 1, std::memory_order_acq_rel);
  }
  void end_item() noexcept {
    word_.fetch_sub(kInFlightUnit, std::memory_order_acq_rel);
  }
  /// True iff pending = 0 and in_flight = 0. Callers must hold no items.
  bool quiesce() const noexcept;

  std::uint64_t pending() const noexcept {
    return word_.load(std::memory_order_acquire) & kPendingMask;
  }
  std::uint64_t in_flight() const noexcept {
    return word_.load(std::memory_order_acquire) >> kInFlightShift;
  }

 private:
  static constexpr unsigned kInFlightShift = 48;
  static constexpr std::uint64_t kInFlightUnit = std::uint64_t{1}
                                                 << kInFlightShift;
  static constexpr std::uint64_t kPendingMask = kInFlightUnit - 1;

  alignas(64) std::atomic<std::uint64_t> word_{0};
};

class WorkerQueue : public WorkSink {
 public:
  virtual std::optional<WorkItem> pop() = 0;
};

class Worklist {
 public:
  virtual ~Worklist() = default;
  virtual WorklistKind kind() const noexcept = 0;
  virtual std::size_t workers() const noexcept = 0;
  /// Single-threaded, before any worker starts.
  virtual void seed(std::span<const WorkItem> items) = 0;
  virtual WorkerQueue& worker(std::size_t id) = 0;

  QuiescenceToken& token() noexcept { return token_; }
  bool quiesce() const noexcept { return token_.quiesce(); }

 protected:
  QuiescenceToken token_;
};

/// Null and SeqBag require workers == 1.
std::unique_ptr<Worklist> make_worklist(const WorklistPolicy& policy,
                                        std::size_t workers);

/// Bucket index of a priority: floor(priority / delta) mod num_buckets.
std::size_t bucket_of(Value priority, Value delta,
                      std::size_t num_buckets) noexcept;

}  // namespace llp
