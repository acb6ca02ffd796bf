#include "llp/core.hpp"

#include <bit>

namespace llp {

Infeasible::Infeasible(std::size_t index, Value required, Value bound)
    : std::runtime_error("infeasible: index " + std::to_string(index) +
                         " must reach " + std::to_string(required) +
                         " but its bound is " + std::to_string(bound)),
      index_(index) {}

bool lattice_precedes(Lattice lattice, Value before, Value after) noexcept {
  switch (lattice) {
    case Lattice::MinValue:
      return after <= before;
    case Lattice::MaxValue:
      return after >= before;
    case Lattice::BitUnion:
      return (before & ~after) == 0;
  }
  return false;
}

UpdateOutcome monotone_update(std::atomic<Value>& cell, Value candidate,
                              Order order) noexcept {
  UpdateOutcome out;
  Value observed = cell.load(std::memory_order_acquire);
  for (;;) {
    const bool improves =
        order == Order::Min ? candidate < observed : candidate > observed;
    if (!improves) {
      out.previous = observed;
      return out;
    }
    if (cell.compare_exchange_weak(observed, candidate,
                                   std::memory_order_acq_rel,
                                   std::memory_order_acquire)) {
      out.updated = true;
      out.previous = observed;
      return out;
    }
    ++out.retries;
  }
}

AtomicArray::AtomicArray(std::size_t size, Value init)
    : cells_(std::make_unique<std::atomic<Value>[]>(size)), size_(size) {
  if (init != 0) {
    for (std::size_t i = 0; i < size; ++i)
      cells_[i].store(init, std::memory_order_relaxed);
  }
}

std::vector<Value> AtomicArray::snapshot() const {
  std::vector<Value> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = load(i);
  return out;
}

FixedVector::FixedVector(std::size_t size)
    : words_(std::make_unique<std::atomic<std::uint64_t>[]>((size + 63) / 64)),
      size_(size) {}

bool FixedVector::is_fixed(std::size_t i) const noexcept {
  return (words_[i / 64].load(std::memory_order_acquire) >> (i % 64)) & 1u;
}

bool FixedVector::mark(std::size_t i) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  return (words_[i / 64].fetch_or(bit, std::memory_order_acq_rel) & bit) == 0;
}

std::size_t FixedVector::count() const noexcept {
  std::size_t total = 0;
  for (std::size_t w = 0; w < (size_ + 63) / 64; ++w)
    total += std::popcount(words_[w].load(std::memory_order_acquire));
  return total;
}

Stats& Stats::operator=(const Stats& other) noexcept {
  const auto s = other.snapshot();
  evaluations_.value.store(s.predicate_evaluations, std::memory_order_relaxed);
  advances_.value.store(s.advances, std::memory_order_relaxed);
  failed_cas_.value.store(s.failed_cas, std::memory_order_relaxed);
  return *this;
}

StatsSnapshot Stats::snapshot() const noexcept {
  return {evaluations_.value.load(std::memory_order_relaxed),
          advances_.value.load(std::memory_order_relaxed),
          failed_cas_.value.load(std::memory_order_relaxed)};
}

GlobalState::GlobalState(std::size_t cells, Value init,
                         std::size_t coordinates)
    : solution(cells, init), fixed(coordinates) {}

UpdateOutcome GlobalState::update(std::size_t i, Value candidate,
                                  Order order) noexcept {
  auto out = monotone_update(solution[i], candidate, order);
  stats.add_failed_cas(out.retries);
  return out;
}

bool GlobalState::merge_bits(std::size_t i, Value bits) noexcept {
  if (bits == 0) return false;
  const Value before = solution[i].fetch_or(bits, std::memory_order_acq_rel);
  return (bits & ~before) != 0;
}

bool Problem::ensure(GlobalState& state, std::size_t index,
                     WorkSink& sink) const {
  if (state.fixed.is_fixed(index)) return false;
  state.stats.add_evaluations();
  if (!is_forbidden(state, index)) return false;
  if (advance(state, index, sink)) state.stats.add_advances();
  return true;
}

std::vector<Value> Problem::final_solution(const GlobalState& state) const {
  return state.solution.snapshot();
}

void Problem::require_within_bound(std::size_t index, Value target) const {
  const auto limits = bound();
  if (!limits.empty() && target > limits[index])
    throw Infeasible(index, target, limits[index]);
}

std::size_t count_forbidden(const Problem& problem, const GlobalState& state) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < problem.size(); ++i)
    if (problem.is_forbidden(state, i)) ++n;
  return n;
}

}  // namespace llp
