#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "llp/driver.hpp"

namespace {

std::vector<llp::ProblemKind> parse_problems(const std::string& text) {
  if (text == "all") return {std::begin(llp::kAllProblems), std::end(llp::kAllProblems)};
  std::vector<llp::ProblemKind> out;
  for (const auto& name : llp::split_list(text)) {
    const auto kind = llp::parse_problem_kind(name);
    if (!kind) throw llp::ConfigError("unknown problem '" + name + "'");
    out.push_back(*kind);
  }
  return out;
}

std::vector<std::size_t> parse_threads(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& field : llp::split_list(text)) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size() || value == 0)
      throw llp::ConfigError("bad thread count '" + field + "'");
    out.push_back(value);
  }
  return llp::cap_threads(std::move(out));
}

std::vector<llp::Strategy> parse_solvers(const std::string& text) {
  std::vector<llp::Strategy> out;
  for (const auto& name : llp::split_list(text)) {
    const auto s = llp::parse_strategy(name);
    if (!s) throw llp::ConfigError("unknown solver '" + name + "'");
    out.push_back(*s);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-linear predicate solvers: verification and benchmarks"};
  app.require_subcommand(1);

  std::string verify_problems = "all";
  std::size_t verify_seeds = 5;
  std::size_t verify_max_size = 200;
  std::string verify_threads = "1,2,4";
  auto* verify = app.add_subcommand("verify", "compare every solver against its oracle");
  verify->add_option("--problems", verify_problems,
                     "all, or a comma list of sssp,bfs,sm,job,reduce,closure,knap");
  verify->add_option("--seeds", verify_seeds, "instances per problem");
  verify->add_option("--max-size", verify_max_size, "upper bound on instance size");
  verify->add_option("--threads", verify_threads, "comma list of thread counts");

  std::string problem_name;
  llp::RunOptions run_options;
  std::string solvers = "ptwb";
  std::string baseline_name;
  std::string threads = "1";
  std::uint64_t delta = 0;
  auto* run = app.add_subcommand("run", "run the solver x threads benchmark matrix");
  run->add_option("--problem", problem_name, "sssp, bfs, sm, job, reduce, closure or knap")
      ->required();
  run->add_option("--instance", run_options.instance_spec,
                  "e.g. chain:1024, randgraph:n=1000,m=5000, file:graph.gr")
      ->required();
  run->add_option("--seed", run_options.seed, "instance seed");
  run->add_option("--solvers", solvers, "comma list of cyclic,bag,allpar,swb,ptwb,ptcf,buckets");
  run->add_option("--baseline", baseline_name,
                  "dijkstra, delta-stepping, bfs-seq, bfs-mt, gs-seq, gs-rounds, topo-seq, "
                  "topo-levels, tree-reduce, floyd-warshall or dp-rows");
  run->add_option("--threads", threads, "comma list of thread counts");
  run->add_option("--reps", run_options.reps, "repetitions per configuration");
  run->add_option("--delta", delta, "bucket width for buckets and delta-stepping");
  run->add_option("--chunk-size", run_options.chunk_size, "ptcf chunk size");
  run->add_option("--tile-width", run_options.tile_width, "knapsack capacity strip width");
  run->add_option("--source", run_options.source, "source vertex for sssp/bfs");
  run->add_option("--csv", run_options.csv_path, "CSV output path (default stdout)");
  run->add_flag("--check", run_options.check, "verify every checksum against the oracle");
  run->add_option("--dump-solution", run_options.dump_path, "write the first solution vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      llp::VerifyOptions options;
      options.problems = parse_problems(verify_problems);
      options.seeds = verify_seeds;
      options.max_size = verify_max_size;
      options.threads = parse_threads(verify_threads);
      return llp::run_verify(options, std::cout).exit_code();
    }
    const auto kind = llp::parse_problem_kind(problem_name);
    if (!kind) throw llp::ConfigError("unknown problem '" + problem_name + "'");
    run_options.problem = *kind;
    run_options.solvers = parse_solvers(solvers);
    run_options.threads = parse_threads(threads);
    if (!baseline_name.empty()) {
      run_options.baseline = llp::parse_baseline(baseline_name);
      if (!run_options.baseline) throw llp::ConfigError("unknown baseline '" + baseline_name + "'");
    }
    if (delta != 0) run_options.delta = delta;
    else if (run->count("--delta")) throw llp::ConfigError("--delta must be at least 1");
    return llp::run_benchmark(run_options, std::cout).exit_code();
  } catch (const llp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << (*run ? run->help() : verify->help());
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
