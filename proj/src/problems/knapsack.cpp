#include <algorithm>

#include "llp/problems.hpp"

namespace llp {

namespace {

// 0/1 knapsack DP over rows k = 0..n and capacities 0..C. A coordinate is a
// tile: row k >= 1 restricted to one strip of `tile_width` capacities.
class Knapsack final : public Problem {
 public:
  Knapsack(KnapsackInstance inst, std::size_t tile_width)
      : weights_(std::move(inst.weights)),
        values_(std::move(inst.values)),
        width_(static_cast<std::size_t>(inst.capacity) + 1),
        tile_width_(tile_width) {
    if (weights_.size() != values_.size())
      throw MalformedInstance("knapsack weights and values differ in length");
    if (tile_width_ == 0) throw std::invalid_argument("tile width must be positive");
    strips_ = (width_ + tile_width_ - 1) / tile_width_;
  }

  std::string_view name() const override { return "knap"; }
  std::size_t size() const override { return items() * strips_; }
  Lattice lattice() const override { return Lattice::MaxValue; }

  GlobalState init_global_state() const override {
    return GlobalState((items() + 1) * width_, 0, size());
  }

  // Descending rows so a LIFO bag starts at row 1.
  void initial_states_to_process(const GlobalState&, WorkSink& sink) const override {
    for (std::size_t k = items(); k >= 1; --k)
      for (std::size_t s = 0; s < strips_; ++s) sink.push({tile(k, s), k});
  }

  bool is_forbidden(const GlobalState& state, std::size_t t) const override {
    const auto [k, lo, hi] = decode(t);
    for (std::size_t c = lo; c < hi; ++c)
      if (state.read(cell(k, c)) < best(state, k, c)) return true;
    return false;
  }

  bool advance(GlobalState& state, std::size_t t, WorkSink& sink) const override {
    const auto [k, lo, hi] = decode(t);
    bool changed = false;
    for (std::size_t c = lo; c < hi; ++c)
      changed |= state.update(cell(k, c), best(state, k, c), Order::Max).updated;
    if (changed && k < items()) {
      // Row k+1 reads row k at c and at c - w_{k+1}.
      const std::size_t next = k + 1;
      const std::size_t shift = static_cast<std::size_t>(
          std::min<Value>(weights_[next - 1], width_));
      const std::size_t first = lo / tile_width_;
      const std::size_t last = std::min(hi - 1 + shift, width_ - 1) / tile_width_;
      const std::size_t shifted_first = std::min(lo + shift, width_ - 1) / tile_width_;
      for (std::size_t s = first; s <= last; ++s) {
        const bool direct = s <= (hi - 1) / tile_width_;
        const bool shifted = lo + shift < width_ && s >= shifted_first;
        if (direct || shifted) sink.push({tile(next, s), next});
      }
    }
    return changed;
  }

  std::vector<Value> final_solution(const GlobalState& state) const override {
    std::vector<Value> row(width_);
    for (std::size_t c = 0; c < width_; ++c) row[c] = state.read(cell(items(), c));
    return row;
  }

 private:
  struct Tile {
    std::size_t row, lo, hi;
  };

  std::size_t items() const { return weights_.size(); }
  std::size_t cell(std::size_t k, std::size_t c) const { return k * width_ + c; }
  std::size_t tile(std::size_t k, std::size_t s) const { return (k - 1) * strips_ + s; }

  Tile decode(std::size_t t) const {
    const std::size_t k = t / strips_ + 1;
    const std::size_t lo = (t % strips_) * tile_width_;
    return {k, lo, std::min(lo + tile_width_, width_)};
  }

  Value best(const GlobalState& state, std::size_t k, std::size_t c) const {
    const Value skip = state.read(cell(k - 1, c));
    const Value w = weights_[k - 1];
    if (w > c) return skip;
    return std::max(skip, saturating_add(values_[k - 1], state.read(cell(k - 1, c - w))));
  }

  std::vector<Value> weights_;
  std::vector<Value> values_;
  std::size_t width_;  // C + 1
  std::size_t tile_width_;
  std::size_t strips_ = 0;
};

}  // namespace

std::unique_ptr<Problem> make_knapsack(KnapsackInstance instance, std::size_t tile_width) {
  return std::make_unique<Knapsack>(std::move(instance), tile_width);
}

}  // namespace llp
