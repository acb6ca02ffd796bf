#include "llp/chase_lev_deque.hpp"

#include <bit>

namespace llp {

ChaseLevDeque::ChaseLevDeque(std::size_t initial_capacity) {
  const auto cap = static_cast<std::int64_t>(
      std::bit_ceil(initial_capacity < 2 ? std::size_t{2} : initial_capacity));
  buffers_.push_back(std::make_unique<Buffer>(cap));
  buffer_.store(buffers_.back().get(), std::memory_order_relaxed);
}

ChaseLevDeque::Buffer* ChaseLevDeque::grow(Buffer* old, std::int64_t bottom,
                                           std::int64_t top) {
  auto bigger = std::make_unique<Buffer>(old->capacity * 2);
  for (std::int64_t i = top; i < bottom; ++i) bigger->put(i, old->get(i));
  Buffer* raw = bigger.get();
  buffers_.push_back(std::move(bigger));
  buffer_.store(raw, std::memory_order_release);
  return raw;
}

void ChaseLevDeque::push(WorkItem item) {
  const std::int64_t b = bottom_.load(std::memory_order_relaxed);
  const std::int64_t t = top_.load(std::memory_order_acquire);
  Buffer* buf = buffer_.load(std::memory_order_relaxed);
  if (b - t > buf->capacity - 1) buf = grow(buf, b, t);
  buf->put(b, item);
  std::atomic_thread_fence(std::memory_order_release);
  bottom_.store(b + 1, std::memory_order_relaxed);
}

std::optional<WorkItem> ChaseLevDeque::take() {
  const std::int64_t b = bottom_.load(std::memory_order_relaxed) - 1;
  Buffer* buf = buffer_.load(std::memory_order_relaxed);
  bottom_.store(b, std::memory_order_relaxed);
  std::atomic_thread_fence(std::memory_order_seq_cst);
  std::int64_t t = top_.load(std::memory_order_relaxed);

  if (t > b) {
    bottom_.store(b + 1, std::memory_order_relaxed);
    return std::nullopt;
  }
  WorkItem item = buf->get(b);
  if (t == b) {
    // Last element: race against thieves for it.
    const bool won = top_.compare_exchange_strong(
        t, t + 1, std::memory_order_seq_cst, std::memory_order_relaxed);
    bottom_.store(b + 1, std::memory_order_relaxed);
    if (!won) return std::nullopt;
  }
  return item;
}

ChaseLevDeque::StealResult ChaseLevDeque::steal() {
  std::int64_t t = top_.load(std::memory_order_acquire);
  std::atomic_thread_fence(std::memory_order_seq_cst);
  const std::int64_t b = bottom_.load(std::memory_order_acquire);
  if (t >= b) return {StealStatus::Empty, {}};

  Buffer* buf = buffer_.load(std::memory_order_acquire);
  const WorkItem item = buf->get(t);
  if (!top_.compare_exchange_strong(t, t + 1, std::memory_order_seq_cst,
                                    std::memory_order_relaxed))
    return {StealStatus::Abort, {}};
  return {StealStatus::Success, item};
}

bool ChaseLevDeque::empty() const noexcept {
  return top_.load(std::memory_order_acquire) >=
         bottom_.load(std::memory_order_acquire);
}

}  // namespace llp
