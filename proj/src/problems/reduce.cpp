#include <bit>

#include "llp/problems.hpp"

namespace llp {

namespace {

// Heap-ordered combine tree: node i has children 2i+1 and 2i+2, leaves
// occupy the last `leaves_` slots and are padded with 0.
class TreeReduce final : public Problem {
 public:
  explicit TreeReduce(std::vector<Value> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("reduce needs at least one value");
    leaves_ = std::bit_ceil(values_.size());
  }

  std::string_view name() const override { return "reduce"; }
  std::size_t size() const override { return 2 * leaves_ - 1; }
  Lattice lattice() const override { return Lattice::MaxValue; }

  GlobalState init_global_state() const override {
    GlobalState state(size(), 0, size());
    state.aux.emplace_back(size(), 0);
    const std::size_t first_leaf = leaves_ - 1;
    for (std::size_t i = 0; i < leaves_; ++i) {
      if (i < values_.size()) state.solution.store(first_leaf + i, values_[i]);
      state.mark_fixed(first_leaf + i);
    }
    for (std::size_t i = 0; i < first_leaf; ++i)
      state.aux[0].store(i, 2 * i + 1 >= first_leaf ? 0 : 2);
    return state;
  }

  void initial_states_to_process(const GlobalState&, WorkSink& sink) const override {
    if (leaves_ < 2) return;
    for (std::size_t i = leaves_ / 2 - 1; i + 1 < leaves_; ++i) sink.push({i, 0});
  }

  bool is_forbidden(const GlobalState& state, std::size_t i) const override {
    return !is_leaf(i) && state.aux[0].load(i) == 0 && !state.fixed.is_fixed(i);
  }

  bool advance(GlobalState& state, std::size_t i, WorkSink& sink) const override {
    if (!is_forbidden(state, i)) return false;
    state.update(i, state.read(2 * i + 1) + state.read(2 * i + 2), Order::Max);
    if (!state.mark_fixed(i)) return false;
    if (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (state.aux[0][parent].fetch_sub(1, std::memory_order_acq_rel) == 1)
        sink.push({parent, 0});
    }
    return true;
  }

  std::vector<Value> final_solution(const GlobalState& state) const override {
    return {state.read(0)};
  }

 private:
  bool is_leaf(std::size_t i) const { return i + 1 >= leaves_; }

  std::vector<Value> values_;
  std::size_t leaves_ = 1;
};

}  // namespace

std::unique_ptr<Problem> make_reduce(std::vector<Value> values) {
  return std::make_unique<TreeReduce>(std::move(values));
}

}  // namespace llp
