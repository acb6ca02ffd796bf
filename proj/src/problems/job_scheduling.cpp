#include <string>

#include "llp/problems.hpp"

namespace llp {

namespace {

constexpr std::size_t kMaxFromParents = 0;
constexpr std::size_t kRemainingPrereqs = 1;

class JobScheduling final : public Problem {
 public:
  explicit JobScheduling(JobInstance inst)
      : children_(std::move(inst.graph)), duration_(std::move(inst.durations)) {
    if (duration_.size() != children_.num_vertices())
      throw MalformedInstance("job count does not match duration count");
    indegree_.assign(duration_.size(), 0);
    for (VertexId c : children_.targets()) ++indegree_[c];
  }

  std::string_view name() const override { return "job"; }
  std::size_t size() const override { return duration_.size(); }
  Lattice lattice() const override { return Lattice::MaxValue; }

  GlobalState init_global_state() const override {
    GlobalState state(size(), 0, size());
    for (std::size_t j = 0; j < size(); ++j) state.solution.store(j, duration_[j]);
    state.aux.emplace_back(size(), 0);
    state.aux.emplace_back(size(), 0);
    for (std::size_t j = 0; j < size(); ++j) state.aux[kRemainingPrereqs].store(j, indegree_[j]);
    return state;
  }

  void initial_states_to_process(const GlobalState&, WorkSink& sink) const override {
    for (std::size_t j = 0; j < size(); ++j)
      if (indegree_[j] == 0) sink.push({j, duration_[j]});
  }

  // A ready job that has not been committed yet is forbidden so that its
  // completion time gets published to its successors.
  bool is_forbidden(const GlobalState& state, std::size_t j) const override {
    if (state.aux[kRemainingPrereqs].load(j) != 0) return false;
    if (!state.fixed.is_fixed(j)) return true;
    return state.read(j) < earliest_finish(state, j);
  }

  bool advance(GlobalState& state, std::size_t j, WorkSink& sink) const override {
    if (state.aux[kRemainingPrereqs].load(j) != 0) return false;
    const Value finish = earliest_finish(state, j);
    const bool raised = state.update(j, finish, Order::Max).updated;
    if (!state.mark_fixed(j)) return raised;
    for (VertexId c : children_.neighbors(j)) {
      monotone_update(state.aux[kMaxFromParents][c], finish, Order::Max);
      if (state.aux[kRemainingPrereqs][c].fetch_sub(1, std::memory_order_acq_rel) == 1)
        sink.push({c, saturating_add(state.aux[kMaxFromParents].load(c), duration_[c])});
    }
    return true;
  }

  void check_complete(const GlobalState& state) const override {
    const std::size_t done = state.fixed.count();
    if (done != size())
      throw MalformedInstance("job graph has a cycle: " + std::to_string(size() - done) +
                              " jobs never became ready");
  }

 private:
  Value earliest_finish(const GlobalState& state, std::size_t j) const {
    return saturating_add(state.aux[kMaxFromParents].load(j), duration_[j]);
  }

  CsrGraph children_;
  std::vector<Value> duration_;
  std::vector<Value> indegree_;
};

}  // namespace

std::unique_ptr<Problem> make_job_scheduling(JobInstance instance) {
  return std::make_unique<JobScheduling>(std::move(instance));
}

}  // namespace llp
