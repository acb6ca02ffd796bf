#pragma once

// Growable work-stealing deque (Chase & Lev, with the C11 memory orderings of
// Le, Pop, Cohen and Zappa Nardelli). The owner pushes and takes at the
// bottom; thieves steal from the top.

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "llp/core.hpp"

namespace llp {

class ChaseLevDeque {
 public:
  enum class StealStatus { Success, Empty, Abort };
  struct StealResult {
    StealStatus status = StealStatus::Empty;
    WorkItem item;
  };

  explicit ChaseLevDeque(std::size_t initial_capacity = 256);
  ChaseLevDeque(const ChaseLevDeque&) = delete;
  ChaseLevDeque& operator=(const ChaseLevDeque&) = delete;

  // Owner only.
  void push(WorkItem item);
  std::optional<WorkItem> take();

  // Any thread.
  StealResult steal();
  bool empty() const noexcept;

 private:
  // Slots hold two relaxed atomics so that a racing thief never performs a
  // plain read of a slot the owner is writing.
  struct Slot {
    std::atomic<std::uint64_t> index{0};
    std::atomic<std::uint64_t> priority{0};
  };
  struct Buffer {
    explicit Buffer(std::int64_t cap)
        : capacity(cap), mask(cap - 1), slots(new Slot[cap]) {}
    std::int64_t capacity;
    std::int64_t mask;
    std::unique_ptr<Slot[]> slots;

    void put(std::int64_t i, WorkItem item) noexcept {
      Slot& s = slots[i & mask];
      s.index.store(item.index, std::memory_order_relaxed);
      s.priority.store(item.priority, std::memory_order_relaxed);
    }
    WorkItem get(std::int64_t i) const noexcept {
      const Slot& s = slots[i & mask];
      return {static_cast<std::size_t>(s.index.load(std::memory_order_relaxed)),
              s.priority.load(std::memory_order_relaxed)};
    }
  };

  Buffer* grow(Buffer* old, std::int64_t bottom, std::int64_t top);

  alignas(64) std::atomic<std::int64_t> top_{0};
  alignas(64) std::atomic<std::int64_t> bottom_{0};
  alignas(64) std::atomic<Buffer*> buffer_;
  // Retired buffers stay alive until destruction; thieves may still read them.
  std::vector<std::unique_ptr<Buffer>> buffers_;
};

}  // namespace llp
