#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "llp/driver.hpp"

namespace llp {

namespace {

struct Row {
  std::string solver;
  std::string worklist;
  std::size_t threads = 1;
  Value delta = 0;
  std::size_t rep = 0;
  std::uint64_t runtime_ns = 0;
  std::uint64_t checksum = 0;
  std::uint64_t predicate_evals = 0;
  std::uint64_t advances = 0;
};

template <typename Fn>
std::uint64_t time_ns(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
}

std::uint64_t median(std::vector<std::uint64_t> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

void dump_solution(const std::string& path, const std::vector<Value>& solution) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  for (std::size_t i = 0; i < solution.size(); ++i) out << i << " " << solution[i] << "\n";
}

}  // namespace

RunReport run_benchmark(const RunOptions& options, std::ostream& out) {
  if (options.reps == 0) throw ConfigError("--reps must be at least 1");
  if (options.threads.empty()) throw ConfigError("--threads is empty");
  if (std::find(options.threads.begin(), options.threads.end(), 0) != options.threads.end())
    throw ConfigError("thread counts must be positive");
  if (options.solvers.empty() && !options.baseline) throw ConfigError("nothing to run");
  if (options.delta && *options.delta == 0) throw ConfigError("--delta must be at least 1");
  if (options.baseline && problem_of(*options.baseline) != options.problem)
    throw ConfigError(std::string(to_string(*options.baseline)) + " does not solve " +
                      std::string(to_string(options.problem)));

  Instance instance;
  std::unique_ptr<Problem> problem;
  try {
    instance = generate(options.instance_spec, options.seed);
    problem = make_problem(options.problem, instance,
                           {.source = options.source, .tile_width = options.tile_width});
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  } catch (const MismatchedInstance& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::optional<std::uint64_t> expected;
  if (options.check)
    expected = solution_checksum(
        run_baseline(instance, oracle_for(options.problem), {.source = options.source}));

  std::ofstream csv_file;
  if (!options.csv_path.empty()) {
    csv_file.open(options.csv_path);
    if (!csv_file) throw ConfigError("cannot write " + options.csv_path);
  }
  std::ostream& csv = options.csv_path.empty() ? out : csv_file;
  csv << kCsvHeader << "\n";

  RunReport report;
  std::vector<Row> rows;
  bool dumped = false;
  auto record = [&](Row row, const std::vector<Value>& solution) {
    row.checksum = solution_checksum(solution);
    if (expected && row.checksum != *expected) {
      ++report.check_failures;
      out << "CHECK FAILED " << row.solver << " threads=" << row.threads << " rep=" << row.rep
          << "\n";
    }
    if (!dumped && !options.dump_path.empty()) {
      dump_solution(options.dump_path, solution);
      dumped = true;
    }
    csv << to_string(options.problem) << "," << options.instance_spec << "," << options.seed
        << "," << row.solver << "," << row.worklist << "," << row.threads << "," << row.delta
        << "," << row.rep << "," << row.runtime_ns << "," << row.checksum << ","
        << row.predicate_evals << "," << row.advances << "\n";
    rows.push_back(std::move(row));
    ++report.rows;
  };

  const Value solver_delta = options.delta.value_or(1);
  for (Strategy strategy : options.solvers) {
    for (std::size_t threads : options.threads) {
      if (is_single_threaded(strategy) && threads != 1) continue;
      const SolverConfig config{.strategy = strategy,
                                .threads = threads,
                                .delta = solver_delta,
                                .chunk_size = options.chunk_size,
                                .seed = options.seed,
                                .verify_exit = false};
      for (std::size_t rep = 0; rep < options.reps; ++rep) {
        SolveResult result;
        Row row{.solver = std::string(to_string(strategy)),
                .worklist = std::string(to_string(worklist_for(strategy))),
                .threads = threads,
                .delta = solver_delta,
                .rep = rep};
        row.runtime_ns = time_ns([&] { result = solve(*problem, config); });
        row.predicate_evals = result.stats.predicate_evaluations;
        row.advances = result.stats.advances;
        record(std::move(row), result.solution);
      }
    }
  }

  if (options.baseline) {
    const BaselineId id = *options.baseline;
    Value delta = 0;
    if (id == BaselineId::DeltaStepping)
      delta = options.delta.value_or(default_delta(std::get<GraphInstance>(instance).graph));
    for (std::size_t threads : options.threads) {
      if (is_sequential(id) && threads != 1) continue;
      for (std::size_t rep = 0; rep < options.reps; ++rep) {
        std::vector<Value> solution;
        Row row{.solver = std::string(to_string(id)),
                .worklist = "-",
                .threads = threads,
                .delta = delta,
                .rep = rep};
        row.runtime_ns = time_ns([&] {
          solution = run_baseline(instance, id,
                                  {.threads = threads, .delta = delta ? std::optional<Value>(delta) : std::nullopt,
                                   .source = options.source});
        });
        record(std::move(row), solution);
      }
    }
  }

  // Medians per (solver, threads); speedup against the baseline at the same
  // thread count, or at 1 thread for a sequential baseline.
  std::map<std::pair<std::string, std::size_t>, std::vector<std::uint64_t>> samples;
  std::map<std::pair<std::string, std::size_t>, std::string> worklists;
  std::vector<std::pair<std::string, std::size_t>> order;
  for (const Row& r : rows) {
    const auto key = std::make_pair(r.solver, r.threads);
    if (!samples.count(key)) order.push_back(key);
    samples[key].push_back(r.runtime_ns);
    worklists[key] = r.worklist;
  }
  std::ofstream summary_file;
  if (!options.csv_path.empty()) summary_file.open(options.csv_path + ".summary.csv");
  const std::string summary_header =
      "problem,solver,worklist,threads,median_runtime_ns,baseline,baseline_median_ns,speedup";
  out << "# summary\n" << summary_header << "\n";
  if (summary_file) summary_file << summary_header << "\n";
  for (const auto& key : order) {
    const std::uint64_t med = median(samples[key]);
    std::string base_name = "-";
    std::string base_med = "-";
    std::string speedup = "-";
    if (options.baseline) {
      const std::string name(to_string(*options.baseline));
      const std::size_t base_threads = is_sequential(*options.baseline) ? 1 : key.second;
      const auto it = samples.find({name, base_threads});
      if (it != samples.end()) {
        const std::uint64_t b = median(it->second);
        base_name = name;
        base_med = std::to_string(b);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f",
                      static_cast<double>(b) / static_cast<double>(std::max<std::uint64_t>(med, 1)));
        speedup = buf;
      }
    }
    std::ostringstream line;
    line << to_string(options.problem) << "," << key.first << "," << worklists[key] << ","
         << key.second << "," << med << "," << base_name << "," << base_med << "," << speedup;
    out << line.str() << "\n";
    if (summary_file) summary_file << line.str() << "\n";
  }
  return report;
}

}  // namespace llp
