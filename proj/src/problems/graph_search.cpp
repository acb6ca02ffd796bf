#include "llp/problems.hpp"

namespace llp {

namespace {

// Pull formulation shared by SSSP and BFS: v is forbidden when some
// in-neighbor offers a strictly shorter route than d(v).
template <bool UnitWeights>
class GraphSearch final : public Problem {
 public:
  GraphSearch(CsrGraph graph, VertexId source)
      : out_(std::move(graph)), in_(out_.transpose()), source_(source) {
    if (source_ >= out_.num_vertices())
      throw std::invalid_argument("source vertex out of range");
  }

  std::string_view name() const override { return UnitWeights ? "bfs" : "sssp"; }
  std::size_t size() const override { return out_.num_vertices(); }
  Lattice lattice() const override { return Lattice::MinValue; }

  GlobalState init_global_state() const override {
    GlobalState state(size(), kInfinity, size());
    state.solution.store(source_, 0);
    state.mark_fixed(source_);
    return state;
  }

  void initial_states_to_process(const GlobalState&, WorkSink& sink) const override {
    const auto nbrs = out_.neighbors(source_);
    const auto ws = out_.weights(source_);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      sink.push({nbrs[k], UnitWeights ? 0 : ws[k]});
  }

  bool is_forbidden(const GlobalState& state, std::size_t v) const override {
    return v != source_ && best_offer(state, v) < state.read(v);
  }

  bool advance(GlobalState& state, std::size_t v, WorkSink& sink) const override {
    if (v == source_) return false;
    const Value candidate = best_offer(state, v);
    if (!state.update(v, candidate, Order::Min).updated) return false;
    const Value priority = UnitWeights ? 0 : candidate;
    for (VertexId next : out_.neighbors(v)) sink.push({next, priority});
    return true;
  }

 private:
  Value best_offer(const GlobalState& state, std::size_t v) const {
    Value best = kInfinity;
    const auto preds = in_.neighbors(v);
    const auto ws = in_.weights(v);
    for (std::size_t k = 0; k < preds.size(); ++k) {
      const Value via = saturating_add(state.read(preds[k]), UnitWeights ? 1 : ws[k]);
      if (via < best) best = via;
    }
    return best;
  }

  CsrGraph out_;
  CsrGraph in_;
  VertexId source_;
};

}  // namespace

std::unique_ptr<Problem> make_sssp(CsrGraph graph, VertexId source) {
  return std::make_unique<GraphSearch<false>>(std::move(graph), source);
}

std::unique_ptr<Problem> make_bfs(CsrGraph graph, VertexId source) {
  return std::make_unique<GraphSearch<true>>(std::move(graph), source);
}

}  // namespace llp
