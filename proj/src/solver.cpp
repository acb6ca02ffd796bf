#include "llp/solver.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include <omp.h>

namespace llp {

std::string_view to_string(Strategy strategy) noexcept {
  switch (strategy) {
    case Strategy::CyclicST: return "cyclic";
    case Strategy::BagST: return "bag";
    case Strategy::AllIndicesPar: return "allpar";
    case Strategy::SharedBagPar: return "swb";
    case Strategy::PerThreadBagPar: return "ptwb";
    case Strategy::ChunkedFifoPar: return "ptcf";
    case Strategy::BucketsPar: return "buckets";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) noexcept {
  for (Strategy s : kAllStrategies)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

bool is_single_threaded(Strategy strategy) noexcept {
  return strategy == Strategy::CyclicST || strategy == Strategy::BagST;
}

WorklistKind worklist_for(Strategy strategy) noexcept {
  switch (strategy) {
    case Strategy::CyclicST:
    case Strategy::AllIndicesPar: return WorklistKind::Null;
    case Strategy::BagST: return WorklistKind::SeqBag;
    case Strategy::SharedBagPar: return WorklistKind::SharedBag;
    case Strategy::PerThreadBagPar: return WorklistKind::PerThreadBag;
    case Strategy::ChunkedFifoPar: return WorklistKind::ChunkedFifo;
    case Strategy::BucketsPar: return WorklistKind::Buckets;
  }
  return WorklistKind::Null;
}

namespace {

// First exception thrown by any worker; later ones are dropped.
class FirstError {
 public:
  void capture() noexcept {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
    raised_.store(true, std::memory_order_release);
  }
  bool raised() const noexcept { return raised_.load(std::memory_order_acquire); }
  void rethrow_if_any() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
  std::atomic<bool> raised_{false};
};

inline void backoff(unsigned attempt) noexcept {
  if (attempt < 16) {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_ia32_pause();
#endif
  } else {
    std::this_thread::yield();
  }
}

// Synchronous rounds: every index is tested against the same state, then
// every forbidden index is advanced. A round in which no advance changes
// the state also ends the run.
std::size_t run_cyclic(const Problem& problem, GlobalState& state) {
  NullSink sink;
  std::vector<std::size_t> forbidden;
  std::size_t passes = 0;
  for (;;) {
    ++passes;
    forbidden.clear();
    for (std::size_t i = 0; i < problem.size(); ++i) {
      if (state.fixed.is_fixed(i)) continue;
      state.stats.add_evaluations();
      if (problem.is_forbidden(state, i)) forbidden.push_back(i);
    }
    bool changed = false;
    for (std::size_t i : forbidden) {
      if (problem.advance(state, i, sink)) {
        state.stats.add_advances();
        changed = true;
      }
    }
    if (!changed) return passes;
  }
}

void run_bag(const Problem& problem, GlobalState& state) {
  auto worklist = make_worklist({.kind = WorklistKind::SeqBag}, 1);
  VectorSink seeds;
  problem.initial_states_to_process(state, seeds);
  worklist->seed(seeds.items);
  auto& bag = worklist->worker(0);
  while (auto item = bag.pop()) problem.ensure(state, item->index, bag);
}

std::size_t run_all_indices(const Problem& problem, GlobalState& state,
                            std::size_t threads) {
  const auto n = static_cast<std::int64_t>(problem.size());
  FirstError errors;
  std::size_t passes = 0;
  int passes_without_change = 0;
  while (passes_without_change <= 1) {
    ++passes;
    bool changed = false;
#pragma omp parallel for num_threads(static_cast<int>(threads)) \
    schedule(static) reduction(|| : changed)
    for (std::int64_t i = 0; i < n; ++i) {
      if (errors.raised()) continue;
      try {
        const auto idx = static_cast<std::size_t>(i);
        if (state.fixed.is_fixed(idx)) continue;
        NullSink sink;
        state.stats.add_evaluations();
        if (problem.is_forbidden(state, idx) &&
            problem.advance(state, idx, sink)) {
          state.stats.add_advances();
          changed = true;
        }
      } catch (...) {
        errors.capture();
      }
    }
    errors.rethrow_if_any();
    passes_without_change = changed ? 0 : passes_without_change + 1;
  }
  return passes;
}

void run_workers(const Problem& problem, GlobalState& state,
                 const SolverConfig& config) {
  WorklistPolicy policy{.kind = worklist_for(config.strategy),
                        .num_buckets = config.num_buckets,
                        .delta = config.delta,
                        .chunk_size = config.chunk_size,
                        .shuffle_seed = config.bucket_shuffle_seed};
  auto worklist = make_worklist(policy, config.threads);
  {
    VectorSink seeds;
    problem.initial_states_to_process(state, seeds);
    worklist->seed(seeds.items);
  }

  FirstError errors;
  QuiescenceToken& token = worklist->token();
#pragma omp parallel num_threads(static_cast<int>(config.threads))
  {
    try {
      WorkerQueue& queue = worklist->worker(
          static_cast<std::size_t>(omp_get_thread_num()));
      unsigned idle = 0;
      while (!errors.raised()) {
        if (auto item = queue.pop()) {
          token.begin_item();
          problem.ensure(state, item->index, queue);
          token.end_item();
          idle = 0;
        } else if (token.quiesce()) {
          break;
        } else {
          backoff(idle++);
        }
      }
    } catch (...) {
      errors.capture();
    }
  }
  errors.rethrow_if_any();
}

}  // namespace

SolveResult solve(const Problem& problem, const SolverConfig& config) {
  if (config.threads == 0)
    throw std::invalid_argument("threads must be at least 1");
  if (is_single_threaded(config.strategy) && config.threads != 1)
    throw std::invalid_argument(std::string(to_string(config.strategy)) +
                                " is single-threaded; threads must be 1");
  if (config.delta == 0) throw std::invalid_argument("delta must be at least 1");

  omp_set_dynamic(0);
  GlobalState state = problem.init_global_state();
  SolveResult result;
  switch (config.strategy) {
    case Strategy::CyclicST:
      result.passes = run_cyclic(problem, state);
      break;
    case Strategy::BagST:
      run_bag(problem, state);
      break;
    case Strategy::AllIndicesPar:
      result.passes = run_all_indices(problem, state, config.threads);
      break;
    case Strategy::SharedBagPar:
    case Strategy::PerThreadBagPar:
    case Strategy::ChunkedFifoPar:
    case Strategy::BucketsPar:
      run_workers(problem, state, config);
      break;
  }
  problem.check_complete(state);
  result.stats = state.stats.snapshot();
  if (config.verify_exit) result.forbidden_at_exit = count_forbidden(problem, state);
  result.solution = problem.final_solution(state);
  return result;
}

SolveResult solve_sequential(const Problem& problem, Strategy strategy) {
  if (!is_single_threaded(strategy))
    throw std::invalid_argument("solve_sequential takes cyclic or bag");
  return solve(problem, {.strategy = strategy, .threads = 1});
}

SolveResult solve_parallel(const Problem& problem, Strategy strategy,
                           std::size_t threads, Value delta) {
  return solve(problem, {.strategy = strategy, .threads = threads, .delta = delta});
}

}  // namespace llp
