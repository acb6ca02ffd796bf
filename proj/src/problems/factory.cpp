#include <string>

#include "llp/problems.hpp"

namespace llp {

std::string_view to_string(ProblemKind kind) noexcept {
  switch (kind) {
    case ProblemKind::Sssp: return "sssp";
    case ProblemKind::Bfs: return "bfs";
    case ProblemKind::StableMarriage: return "sm";
    case ProblemKind::JobScheduling: return "job";
    case ProblemKind::Reduce: return "reduce";
    case ProblemKind::Closure: return "closure";
    case ProblemKind::Knapsack: return "knap";
  }
  return "?";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view name) noexcept {
  for (ProblemKind kind : kAllProblems)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

namespace {

template <typename T>
const T& expect(const Instance& instance, ProblemKind kind) {
  if (const T* inst = std::get_if<T>(&instance)) return *inst;
  throw MismatchedInstance(std::string(to_string(kind)) + " cannot run on a " +
                           std::string(instance_kind(instance)) + " instance");
}

}  // namespace

std::unique_ptr<Problem> make_problem(ProblemKind kind, const Instance& instance,
                                      const ProblemOptions& options) {
  switch (kind) {
    case ProblemKind::Sssp:
      return make_sssp(expect<GraphInstance>(instance, kind).graph, options.source);
    case ProblemKind::Bfs:
      return make_bfs(expect<GraphInstance>(instance, kind).graph, options.source);
    case ProblemKind::StableMarriage:
      return make_stable_marriage(expect<MatchingInstance>(instance, kind));
    case ProblemKind::JobScheduling:
      return make_job_scheduling(expect<JobInstance>(instance, kind));
    case ProblemKind::Reduce:
      return make_reduce(expect<ReduceInstance>(instance, kind).values);
    case ProblemKind::Closure:
      if (const auto* jobs = std::get_if<JobInstance>(&instance)) return make_closure(jobs->graph);
      return make_closure(expect<GraphInstance>(instance, kind).graph);
    case ProblemKind::Knapsack:
      return make_knapsack(expect<KnapsackInstance>(instance, kind), options.tile_width);
  }
  throw std::invalid_argument("unknown problem kind");
}

}  // namespace llp
