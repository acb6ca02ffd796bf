#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "llp/driver.hpp"
#include "llp/prng.hpp"

namespace llp {

namespace {

std::size_t size_cap(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::StableMarriage:
    case ProblemKind::Closure:
    case ProblemKind::Knapsack: return 64;
    default: return 200;
  }
}

constexpr double kEdgeProbabilities[] = {0.05, 0.1, 0.2, 0.5};
constexpr std::size_t kTileWidths[] = {1, 7, 64, 256};
constexpr std::size_t kChunkSizes[] = {1, 16, 64};
constexpr Value kDeltas[] = {1, 4, 16};

Prng stream_for(ProblemKind kind, std::uint64_t seed) {
  return Prng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(kind) + 1);
}

std::string describe_first_difference(const std::vector<Value>& got,
                                      const std::vector<Value>& want) {
  std::ostringstream msg;
  if (got.size() != want.size()) {
    msg << "length " << got.size() << " != " << want.size();
    return msg.str();
  }
  const auto it = std::mismatch(got.begin(), got.end(), want.begin()).first;
  const auto i = static_cast<std::size_t>(it - got.begin());
  msg << "first divergent index " << i << ": got " << got[i] << ", expected " << want[i];
  return msg.str();
}

struct Cell {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

}  // namespace

std::string verify_instance_spec(ProblemKind kind, std::uint64_t seed, std::size_t max_size) {
  Prng rng = stream_for(kind, seed);
  const std::size_t cap = std::max<std::size_t>(1, std::min(size_cap(kind), max_size));
  const std::size_t n = rng.uniform(1, cap);
  std::ostringstream spec;
  switch (kind) {
    case ProblemKind::Sssp:
    case ProblemKind::Bfs:
      spec << "randgraph:n=" << n << ",m=" << rng.uniform(0, 3 * n)
           << ",wmax=" << rng.uniform(1, 100) << ",directed=" << rng.next() % 2;
      break;
    case ProblemKind::JobScheduling:
      spec << "dag:n=" << n << ",p=" << kEdgeProbabilities[rng.next() % 4];
      break;
    case ProblemKind::StableMarriage:
      spec << "sm:n=" << n;
      break;
    case ProblemKind::Reduce:
      spec << "reduce:n=" << n;
      break;
    case ProblemKind::Closure:
      if (seed % 2 == 0)
        spec << "closuredag:n=" << n << ",p=" << kEdgeProbabilities[rng.next() % 4];
      else
        spec << "randgraph:n=" << n << ",m=" << rng.uniform(0, 2 * n) << ",directed=1";
      break;
    case ProblemKind::Knapsack:
      spec << "knap:n=" << n << ",cap=" << rng.uniform(0, 256) << ",wmax=" << rng.uniform(1, 64)
           << ",vmax=" << rng.uniform(1, 100);
      break;
  }
  return spec.str();
}

VerifyReport run_verify(const VerifyOptions& options, std::ostream& out) {
  const ProblemFactory factory =
      options.factory ? options.factory
                      : ProblemFactory([](ProblemKind k, const Instance& i, const ProblemOptions& o) {
                          return make_problem(k, i, o);
                        });
  VerifyReport report;
  std::vector<std::string> columns;
  for (Strategy s : kAllStrategies)
    for (std::size_t t : options.threads)
      if (!is_single_threaded(s) || t == 1)
        columns.push_back(std::string(to_string(s)) + "@" + std::to_string(t));

  std::map<std::pair<ProblemKind, std::string>, Cell> matrix;
  for (ProblemKind kind : options.problems) {
    bool reported_failure = false;
    for (std::uint64_t seed = options.first_seed; seed < options.first_seed + options.seeds;
         ++seed) {
      const std::string spec = verify_instance_spec(kind, seed, options.max_size);
      Prng knobs = stream_for(kind, ~seed);
      const Instance instance = generate(spec, seed);
      const std::vector<Value> expected = run_baseline(instance, oracle_for(kind));
      const ProblemOptions problem_options{.tile_width = kTileWidths[knobs.next() % 4]};
      const auto problem = factory(kind, instance, problem_options);
      const std::size_t chunk = kChunkSizes[knobs.next() % 3];
      const Value delta = kDeltas[knobs.next() % 3];

      for (Strategy strategy : kAllStrategies) {
        for (std::size_t threads : options.threads) {
          if (is_single_threaded(strategy) && threads != 1) continue;
          const std::string column = std::string(to_string(strategy)) + "@" + std::to_string(threads);
          Cell& cell = matrix[{kind, column}];
          ++report.checks;
          std::string failure;
          try {
            const SolveResult result = solve(*problem, {.strategy = strategy,
                                                        .threads = threads,
                                                        .delta = delta,
                                                        .chunk_size = chunk});
            if (result.solution != expected)
              failure = describe_first_difference(result.solution, expected);
            else if (result.forbidden_at_exit != 0)
              failure = std::to_string(result.forbidden_at_exit) + " indices forbidden at exit";
          } catch (const std::exception& e) {
            failure = std::string("error: ") + e.what();
          }
          if (failure.empty()) {
            ++cell.passed;
            continue;
          }
          ++cell.failed;
          ++report.failures;
          if (!reported_failure) {
            out << "MISMATCH " << to_string(kind) << " " << spec << " seed=" << seed << " "
                << column << ": " << failure << "\n";
            reported_failure = true;
          }
        }
      }
    }
  }

  out << "problem";
  for (const auto& c : columns) out << "\t" << c;
  out << "\n";
  for (ProblemKind kind : options.problems) {
    out << to_string(kind);
    for (const auto& c : columns) {
      const Cell& cell = matrix[{kind, c}];
      if (cell.failed == 0)
        out << "\tpass";
      else
        out << "\tFAIL(" << cell.failed << "/" << cell.passed + cell.failed << ")";
    }
    out << "\n";
  }
  out << report.checks << " checks, " << report.failures << " failures\n";
  return report;
}

}  // namespace llp
