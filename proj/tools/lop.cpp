// Command-line harness: solve single instances, run seeded campaigns over
// instance directories, run the recombination/pool-updating ablations, and
// expose the exhaustive reference solver and the instance generator.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "lop/errors.hpp"
#include "lop/instance.hpp"
#include "lop/memetic.hpp"
#include "lop/oracle.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitGuard = 4;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string one_based(const lop::Permutation& perm) {
  std::string out;
  for (int k = 0; k < perm.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(perm[k] + 1);
  }
  return out;
}

void write_trace_csv(std::ostream& out, const lop::RunTrace& trace) {
  out << "# lop-trace v1\n";
  out << "generation,best_objective,avg_objective,diversity,stagnation,"
         "fallbacks,elapsed_ms\n";
  for (const auto& row : trace)
    out << row.generation << ',' << row.best_objective << ','
        << fixed6(row.avg_objective) << ',' << fixed6(row.diversity) << ','
        << row.stagnation << ',' << row.fallbacks << ',' << row.elapsed_ms
        << '\n';
}

void write_trace_file(const fs::path& path, const lop::RunTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file '" + path.string() + "'");
  write_trace_csv(out, trace);
}

// Shared solver flags; every subcommand that runs the engine takes these.
struct SolverFlags {
  lop::SolverConfig cfg;
  double time_limit_sec = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "base RNG seed");
    cmd->add_option("--p", cfg.population_size, "population size");
    cmd->add_option("--c", cfg.offspring_count, "offspring per generation");
    cmd->add_option("--g", cfg.stagnation_limit,
                    "stagnant generations before a restart");
    cmd->add_option("--m", cfg.parent_count,
                    "parents per recombination (2 = order-based)");
    cmd->add_option("--beta-low", cfg.beta_low, "parent-selection threshold, low");
    cmd->add_option("--beta-high", cfg.beta_high, "parent-selection threshold, high");
    cmd->add_option("--alpha-low", cfg.alpha_low, "pool-update score weight, low");
    cmd->add_option("--alpha-high", cfg.alpha_high, "pool-update score weight, high");
    cmd->add_option("--pool-strategy", pool_strategy_name,
                    "pool updating: score_based or ovbs");
    cmd->add_option("--max-generations", cfg.stop.max_generations,
                    "generation budget (0 = unlimited)");
    cmd->add_option("--time-limit", time_limit_sec,
                    "wall-clock budget in seconds (0 = unlimited)");
  }

  lop::SolverConfig resolve() {
    if (pool_strategy_name == "score_based")
      cfg.pool_strategy = lop::PoolStrategy::score_based;
    else if (pool_strategy_name == "ovbs")
      cfg.pool_strategy = lop::PoolStrategy::ovbs;
    else
      throw lop::ConfigError("unknown pool strategy '" + pool_strategy_name +
                             "' (use score_based or ovbs)");
    cfg.stop.time_limit_ms = static_cast<std::int64_t>(time_limit_sec * 1000.0);
    cfg.validate();
    return cfg;
  }

 private:
  std::string pool_strategy_name = "score_based";
};

// ---------------------------------------------------------------- solve

int cmd_solve(const std::string& path, SolverFlags& flags,
              const std::string& trace_path, const std::string& format) {
  const lop::LopInstance inst = lop::load_instance(path);
  const lop::SolverConfig cfg = flags.resolve();
  const lop::RunResult res = lop::run(inst, cfg);

  if (format == "json") {
    ordered_json j;
    j["instance"] = inst.name;
    j["n"] = inst.n;
    j["seed"] = cfg.seed;
    j["best_objective"] = res.best.best.objective;
    j["best_permutation"] = [&] {
      std::vector<int> v;
      for (int k = 0; k < res.best.best.perm.size(); ++k)
        v.push_back(res.best.best.perm[k] + 1);
      return v;
    }();
    j["time_to_best_ms"] = res.best.time_to_best_ms;
    j["generation_of_best"] = res.best.generation_of_best;
    j["generations"] = res.generations;
    j["restarts"] = res.restarts;
    j["selection_fallbacks"] = res.selection_fallbacks;
    j["config_digest"] = lop::config_digest(cfg);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "instance " << inst.name << '\n'
              << "n " << inst.n << '\n'
              << "seed " << cfg.seed << '\n'
              << "best_objective " << res.best.best.objective << '\n'
              << "best_permutation " << one_based(res.best.best.perm) << '\n'
              << "time_to_best_ms " << res.best.time_to_best_ms << '\n'
              << "generation_of_best " << res.best.generation_of_best << '\n'
              << "generations " << res.generations << '\n'
              << "restarts " << res.restarts << '\n'
              << "selection_fallbacks " << res.selection_fallbacks << '\n'
              << "config_digest " << lop::config_digest(cfg) << '\n';
  }
  if (!trace_path.empty()) write_trace_file(trace_path, res.trace);
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchRow {
  std::string instance;
  int n = 0;
  int run = 0;
  std::uint64_t seed = 0;
  std::int64_t best = 0;
  std::int64_t time_to_best_ms = 0;
  std::uint64_t generations = 0;
  int restarts = 0;
  std::string config_digest;
};

struct BenchAggregate {
  std::string instance;
  int n = 0;
  int runs = 0;
  std::int64_t f_best = 0;
  double f_avg = 0.0;
};

int cmd_bench(const std::string& dir, SolverFlags& flags, int runs, int jobs,
              const std::string& format) {
  const lop::SolverConfig base = flags.resolve();
  if (runs < 1) throw lop::ConfigError("--runs must be positive");
  if (jobs < 1) throw lop::ConfigError("--jobs must be positive");

  std::vector<fs::path> files;
  {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw lop::ParseError("cannot read directory '" + dir + "': " + ec.message());
    for (const auto& entry : it)
      if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<lop::LopInstance> instances;
  std::vector<std::string> failures;
  for (const auto& file : files) {
    try {
      instances.push_back(lop::load_instance(file));
    } catch (const lop::ParseError& e) {
      failures.push_back(file.string() + ": " + e.what());
      std::cerr << "skip " << file.string() << ": " << e.what() << '\n';
    }
  }

  struct Cell {
    const lop::LopInstance* inst;
    int run;
  };
  std::vector<Cell> cells;
  for (const auto& inst : instances)
    for (int r = 0; r < runs; ++r) cells.push_back(Cell{&inst, r});

  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t k; (k = cursor.fetch_add(1)) < cells.size();) {
      const Cell& cell = cells[k];
      lop::SolverConfig cfg = base;
      cfg.seed = lop::derive_seed(base.seed, cell.inst->name,
                                  static_cast<std::uint64_t>(cell.run));
      const lop::RunResult res = lop::run(*cell.inst, cfg);
      rows[k] = BenchRow{cell.inst->name,
                         cell.inst->n,
                         cell.run,
                         cfg.seed,
                         res.best.best.objective,
                         res.best.time_to_best_ms,
                         res.generations,
                         res.restarts,
                         lop::config_digest(cfg)};
    }
  };
  {
    std::vector<std::thread> pool;
    const int count = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(jobs),
                              std::max<std::size_t>(cells.size(), 1)));
    for (int t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }

  std::vector<BenchAggregate> aggregates;
  for (const auto& inst : instances) {
    BenchAggregate agg{inst.name, inst.n, runs, 0, 0.0};
    bool first = true;
    double sum = 0.0;
    for (const auto& row : rows) {
      if (row.instance != inst.name) continue;
      if (first || row.best > agg.f_best) agg.f_best = row.best;
      first = false;
      sum += static_cast<double>(row.best);
    }
    agg.f_avg = sum / runs;
    aggregates.push_back(agg);
  }

  if (format == "json") {
    ordered_json j;
    j["format"] = "lop-bench-v1";
    j["base_config_digest"] = lop::config_digest(base);
    j["runs"] = ordered_json::array();
    for (const auto& row : rows)
      j["runs"].push_back(ordered_json{{"instance", row.instance},
                                       {"n", row.n},
                                       {"run", row.run},
                                       {"seed", row.seed},
                                       {"best_objective", row.best},
                                       {"time_to_best_ms", row.time_to_best_ms},
                                       {"generations", row.generations},
                                       {"restarts", row.restarts},
                                       {"config_digest", row.config_digest}});
    j["aggregates"] = ordered_json::array();
    for (const auto& agg : aggregates)
      j["aggregates"].push_back(ordered_json{{"instance", agg.instance},
                                             {"n", agg.n},
                                             {"runs", agg.runs},
                                             {"f_best", agg.f_best},
                                             {"f_avg", agg.f_avg}});
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "# lop-bench v1 base_config_digest=" << lop::config_digest(base)
              << '\n';
    std::cout << "# section=runs\n";
    std::cout << "instance,n,run,seed,best_objective,time_to_best_ms,"
                 "generations,restarts,config_digest\n";
    for (const auto& row : rows)
      std::cout << row.instance << ',' << row.n << ',' << row.run << ','
                << row.seed << ',' << row.best << ',' << row.time_to_best_ms
                << ',' << row.generations << ',' << row.restarts << ','
                << row.config_digest << '\n';
    std::cout << "# section=aggregates\n";
    std::cout << "instance,n,runs,f_best,f_avg\n";
    for (const auto& agg : aggregates)
      std::cout << agg.instance << ',' << agg.n << ',' << agg.runs << ','
                << agg.f_best << ',' << fixed6(agg.f_avg) << '\n';
  }

  return failures.empty() ? 0 : kExitParse;
}

// ---------------------------------------------------------------- ablation

struct AblationConfig {
  std::string label;
  lop::SolverConfig cfg;
};

int cmd_ablation(const std::string& path, SolverFlags& flags,
                 const std::string& mode, int runs,
                 const std::string& trace_prefix, const std::string& format) {
  const lop::LopInstance inst = lop::load_instance(path);
  const lop::SolverConfig base = flags.resolve();
  if (runs < 1) throw lop::ConfigError("--runs must be positive");

  std::vector<AblationConfig> configs;
  if (mode == "parents") {
    for (int m : {2, 3, 4}) {
      lop::SolverConfig cfg = base;
      cfg.parent_count = m;
      configs.push_back({"m=" + std::to_string(m), cfg});
    }
  } else if (mode == "pool") {
    lop::SolverConfig ovbs = base;
    ovbs.pool_strategy = lop::PoolStrategy::ovbs;
    configs.push_back({"ovbs", ovbs});
    lop::SolverConfig fixed = base;
    fixed.pool_strategy = lop::PoolStrategy::score_based;
    fixed.alpha_low = fixed.alpha_high = 0.8;
    configs.push_back({"alpha=0.8", fixed});
    lop::SolverConfig randomized = base;
    randomized.pool_strategy = lop::PoolStrategy::score_based;
    randomized.alpha_low = 0.8;
    randomized.alpha_high = 1.0;
    configs.push_back({"alpha=rand(0.8,1.0)", randomized});
  } else {
    throw lop::ConfigError("unknown ablation mode '" + mode +
                           "' (use parents or pool)");
  }
  for (auto& entry : configs) entry.cfg.validate();

  struct ConfigStats {
    std::int64_t f_best = 0;
    double f_avg = 0.0;
    std::string digest;
    std::vector<std::int64_t> per_run;
  };
  std::vector<ConfigStats> stats(configs.size());

  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    ConfigStats& st = stats[ci];
    double sum = 0.0;
    for (int r = 0; r < runs; ++r) {
      lop::SolverConfig cfg = configs[ci].cfg;
      // Seeds are shared across configurations so each run index faces the
      // same random stream regardless of the variant under study.
      cfg.seed = lop::derive_seed(base.seed, inst.name, static_cast<std::uint64_t>(r));
      const lop::RunResult res = lop::run(inst, cfg);
      st.per_run.push_back(res.best.best.objective);
      sum += static_cast<double>(res.best.best.objective);
      if (r == 0 || res.best.best.objective > st.f_best)
        st.f_best = res.best.best.objective;
      if (!trace_prefix.empty()) {
        std::string label = configs[ci].label;
        std::replace(label.begin(), label.end(), '=', '-');
        std::replace(label.begin(), label.end(), '(', '_');
        std::replace(label.begin(), label.end(), ')', '_');
        std::replace(label.begin(), label.end(), ',', '_');
        write_trace_file(trace_prefix + "." + label + ".r" + std::to_string(r) + ".csv",
                         res.trace);
      }
      st.digest = lop::config_digest(cfg);
    }
    st.f_avg = sum / runs;
  }

  const std::string digest = hex16(lop::instance_digest(inst));
  if (format == "json") {
    ordered_json j;
    j["format"] = "lop-ablation-v1";
    j["mode"] = mode;
    j["instance"] = inst.name;
    j["n"] = inst.n;
    j["instance_digest"] = digest;
    j["runs"] = runs;
    j["configs"] = ordered_json::array();
    for (std::size_t ci = 0; ci < configs.size(); ++ci)
      j["configs"].push_back(ordered_json{{"config", configs[ci].label},
                                          {"config_digest", stats[ci].digest},
                                          {"f_best", stats[ci].f_best},
                                          {"f_avg", stats[ci].f_avg},
                                          {"per_run", stats[ci].per_run}});
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "# lop-ablation v1 mode=" << mode << " instance=" << inst.name
              << " n=" << inst.n << " instance_digest=" << digest
              << " runs=" << runs << '\n';
    std::cout << "config,runs,f_best,f_avg,config_digest\n";
    for (std::size_t ci = 0; ci < configs.size(); ++ci)
      std::cout << configs[ci].label << ',' << runs << ',' << stats[ci].f_best
                << ',' << fixed6(stats[ci].f_avg) << ',' << stats[ci].digest
                << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- exact

int cmd_exact(const std::string& path) {
  const lop::LopInstance inst = lop::load_instance(path);
  const auto res = lop::oracle::exact_solve(inst);
  std::cout << "instance " << inst.name << '\n'
            << "n " << inst.n << '\n'
            << "optimum " << res.optimum << '\n'
            << "witness " << one_based(res.witness) << '\n';
  return 0;
}

// ---------------------------------------------------------------- gen

int cmd_gen(const std::string& out_path, const lop::GeneratorSpec& spec,
            const std::string& name) {
  lop::LopInstance inst = lop::generate_instance(spec);
  if (!name.empty()) inst.name = name;
  lop::save_instance(inst, out_path);
  std::cout << "wrote " << out_path << " name=" << inst.name << " n=" << inst.n
            << " seed=" << spec.seed << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear ordering solver and benchmark harness"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance");
  std::string solve_path, solve_trace, solve_format = "text";
  SolverFlags solve_flags;
  solve->add_option("instance", solve_path, "instance file")->required();
  solve_flags.attach(solve);
  solve->add_option("--trace", solve_trace, "write a per-generation CSV trace");
  solve->add_option("--format", solve_format, "text or json");

  // bench
  auto* bench = app.add_subcommand("bench", "run a seeded campaign over a directory");
  std::string bench_dir, bench_format = "csv";
  int bench_runs = 10, bench_jobs = 1;
  SolverFlags bench_flags;
  bench->add_option("directory", bench_dir, "directory of instance files")->required();
  bench_flags.attach(bench);
  bench->add_option("--runs", bench_runs, "runs per instance");
  bench->add_option("--jobs", bench_jobs, "concurrent runs");
  bench->add_option("--format", bench_format, "csv or json");

  // ablation
  auto* ablation = app.add_subcommand("ablation", "compare operator variants");
  std::string abl_path, abl_mode, abl_trace, abl_format = "csv";
  int abl_runs = 10;
  SolverFlags abl_flags;
  abl_flags.cfg.stop.max_generations = 400;  // study default
  ablation->add_option("instance", abl_path, "instance file")->required();
  ablation->add_option("--mode", abl_mode, "parents or pool")->required();
  abl_flags.attach(ablation);
  ablation->add_option("--runs", abl_runs, "runs per configuration");
  ablation->add_option("--trace", abl_trace, "trace file prefix");
  ablation->add_option("--format", abl_format, "csv or json");

  // exact
  auto* exact = app.add_subcommand("exact", "exhaustive optimum for tiny instances");
  std::string exact_path;
  exact->add_option("instance", exact_path, "instance file")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  std::string gen_out, gen_name;
  lop::GeneratorSpec gen_spec{10, 0, 100, 0};
  gen->add_option("output", gen_out, "output file")->required();
  gen->add_option("--n", gen_spec.n, "dimension");
  gen->add_option("--low", gen_spec.weight_low, "inclusive lower weight bound");
  gen->add_option("--high", gen_spec.weight_high, "inclusive upper weight bound");
  gen->add_option("--seed", gen_spec.seed, "generator seed");
  gen->add_option("--name", gen_name, "instance name (defaults to a generated label)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(solve_path, solve_flags, solve_trace, solve_format);
    if (*bench) return cmd_bench(bench_dir, bench_flags, bench_runs, bench_jobs, bench_format);
    if (*ablation)
      return cmd_ablation(abl_path, abl_flags, abl_mode, abl_runs, abl_trace, abl_format);
    if (*exact) return cmd_exact(exact_path);
    if (*gen) return cmd_gen(gen_out, gen_spec, gen_name);
  } catch (const lop::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const lop::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const lop::GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
