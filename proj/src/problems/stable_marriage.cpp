#include "llp/problems.hpp"

namespace llp {

namespace {

class StableMarriage final : public Problem {
 public:
  explicit StableMarriage(const MatchingInstance& inst)
      : n_(inst.men.size()), bound_(n_, n_ == 0 ? 0 : n_ - 1) {
    validate_preferences(inst);
    prefs_.reserve(n_ * n_);
    for (const auto& list : inst.men) prefs_.insert(prefs_.end(), list.begin(), list.end());
    rank_.assign(n_ * n_, 0);
    for (std::size_t w = 0; w < n_; ++w) {
      for (std::size_t pos = 0; pos < n_; ++pos) rank_[w * n_ + inst.women[w][pos]] = pos;
    }
  }

  std::string_view name() const override { return "sm"; }
  std::size_t size() const override { return n_; }
  Lattice lattice() const override { return Lattice::MaxValue; }
  std::span<const Value> bound() const override { return bound_; }

  GlobalState init_global_state() const override { return GlobalState(n_, 0, n_); }

  void initial_states_to_process(const GlobalState&, WorkSink& sink) const override {
    for (std::size_t m = 0; m < n_; ++m) sink.push({m, 0});
  }

  bool is_forbidden(const GlobalState& state, std::size_t m) const override {
    return rejected_at(state, m, state.read(m));
  }

  bool advance(GlobalState& state, std::size_t m, WorkSink& sink) const override {
    auto& cell = state.solution[m];
    Value k = cell.load(std::memory_order_acquire);
    for (;;) {
      if (!rejected_at(state, m, k)) return false;
      require_within_bound(m, k + 1);
      if (cell.compare_exchange_weak(k, k + 1, std::memory_order_acq_rel,
                                     std::memory_order_acquire))
        break;
      state.stats.add_failed_cas();
    }
    const Value woman = target(m, k + 1);
    for (std::size_t other = 0; other < n_; ++other)
      if (target(other, state.read(other)) == woman) sink.push({other, k + 1});
    return true;
  }

 private:
  Value target(std::size_t m, Value k) const { return prefs_[m * n_ + k]; }

  // Another man proposing to the same woman is ranked above m by her.
  bool rejected_at(const GlobalState& state, std::size_t m, Value k) const {
    const Value woman = target(m, k);
    const std::size_t* ranks = rank_.data() + woman * n_;
    for (std::size_t other = 0; other < n_; ++other) {
      if (other == m) continue;
      if (target(other, state.read(other)) == woman && ranks[other] < ranks[m]) return true;
    }
    return false;
  }

  std::size_t n_;
  std::vector<Value> bound_;
  std::vector<Value> prefs_;      // n x n, row m = man m's list
  std::vector<std::size_t> rank_;  // n x n, rank_[w*n + m] = position of m in w's list
};

}  // namespace

std::unique_ptr<Problem> make_stable_marriage(MatchingInstance instance) {
  return std::make_unique<StableMarriage>(instance);
}

}  // namespace llp
