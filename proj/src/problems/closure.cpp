#include <bit>

#include "llp/problems.hpp"

namespace llp {

namespace {

// One coordinate per row of the reachability matrix. Row u is forbidden
// when it reaches some w whose row is not contained in its own.
class TransitiveClosure final : public Problem {
 public:
  explicit TransitiveClosure(CsrGraph graph)
      : n_(graph.num_vertices()),
        words_(closure_row_words(n_)),
        out_(std::move(graph)),
        preds_(out_.transpose()) {}

  std::string_view name() const override { return "closure"; }
  std::size_t size() const override { return n_; }
  Lattice lattice() const override { return Lattice::BitUnion; }

  GlobalState init_global_state() const override {
    GlobalState state(n_ * words_, 0, n_);
    for (std::size_t u = 0; u < n_; ++u)
      for (VertexId v : out_.neighbors(u)) state.merge_bits(cell(u, v / 64), bit(v));
    return state;
  }

  void initial_states_to_process(const GlobalState&, WorkSink& sink) const override {
    for (std::size_t u = 0; u < n_; ++u) sink.push({u, 0});
  }

  bool is_forbidden(const GlobalState& state, std::size_t u) const override {
    for (std::size_t k = 0; k < words_; ++k) {
      Value reach = state.read(cell(u, k));
      while (reach != 0) {
        const std::size_t w = k * 64 + static_cast<std::size_t>(std::countr_zero(reach));
        reach &= reach - 1;
        if (w != u && !row_contains(state, u, w)) return true;
      }
    }
    return false;
  }

  bool advance(GlobalState& state, std::size_t u, WorkSink& sink) const override {
    bool changed = false;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t k = 0; k < words_; ++k) {
        Value reach = state.read(cell(u, k));
        while (reach != 0) {
          const std::size_t w = k * 64 + static_cast<std::size_t>(std::countr_zero(reach));
          reach &= reach - 1;
          if (w == u) continue;
          for (std::size_t j = 0; j < words_; ++j)
            grew |= state.merge_bits(cell(u, j), state.read(cell(w, j)));
        }
      }
      changed |= grew;
    }
    if (changed)
      for (VertexId p : preds_.neighbors(u)) sink.push({p, 0});
    return changed;
  }

 private:
  std::size_t cell(std::size_t row, std::size_t word) const { return row * words_ + word; }
  static Value bit(std::size_t v) { return Value{1} << (v % 64); }

  bool row_contains(const GlobalState& state, std::size_t u, std::size_t w) const {
    for (std::size_t j = 0; j < words_; ++j)
      if (state.read(cell(w, j)) & ~state.read(cell(u, j))) return false;
    return true;
  }

  std::size_t n_;
  std::size_t words_;
  CsrGraph out_;
  CsrGraph preds_;
};

}  // namespace

std::unique_ptr<Problem> make_closure(CsrGraph graph) {
  return std::make_unique<TransitiveClosure>(std::move(graph));
}

}  // namespace llp
