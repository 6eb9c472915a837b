#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "lop/instance.hpp"
#include "lop/oracle.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using testsup::run_command;

namespace {

std::string cli() { return testsup::cli_path().string(); }

int count_lines_with_commas(const std::string& text, const std::string& after,
                            const std::string& until) {
  std::istringstream in(text);
  std::string line;
  bool active = false;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.rfind(after, 0) == 0) {
      active = true;
      continue;
    }
    if (!until.empty() && line.rfind(until, 0) == 0) active = false;
    if (active && line.find(',') != std::string::npos &&
        line.find("instance,") != 0)
      ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("cli: gen output round-trips and is seed-stable") {
  const auto dir = testsup::scratch_dir("gen");
  const auto file = dir / "g.mat";
  const auto res = run_command(cli() + " gen " + file.string() +
                               " --n 12 --low -5 --high 50 --seed 77");
  CHECK(res.exit_code == 0);
  const lop::LopInstance inst = lop::load_instance(file);
  CHECK(inst.n == 12);
  CHECK(inst == lop::generate_instance(lop::GeneratorSpec{12, -5, 50, 77}));
  fs::remove_all(dir);
}

TEST_CASE("cli: gen rejects invalid bounds with the config exit code") {
  const auto dir = testsup::scratch_dir("genbad");
  const auto res = run_command(cli() + " gen " + (dir / "x.mat").string() +
                               " --n 5 --low 9 --high 2");
  CHECK(res.exit_code == 3);
  fs::remove_all(dir);
}

TEST_CASE("cli: exact matches the library oracle and guards large n") {
  const auto dir = testsup::scratch_dir("exact");
  const auto small = dir / "small.mat";
  {
    std::ofstream out(small);
    out << "t3\n3\n0 1 2\n3 0 4\n5 6 0\n";
  }
  const auto res = run_command(cli() + " exact " + small.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("optimum 14") != std::string::npos);
  CHECK(res.output.find("witness 3 2 1") != std::string::npos);

  const auto one = dir / "one.mat";
  {
    std::ofstream out(one);
    out << "solo\n1\n9\n";
  }
  const auto res_one = run_command(cli() + " exact " + one.string());
  CHECK(res_one.exit_code == 0);
  CHECK(res_one.output.find("optimum 0") != std::string::npos);
  CHECK(res_one.output.find("witness 1") != std::string::npos);

  const auto big = dir / "big.mat";
  {
    lop::LopInstance inst;
    inst.name = "big";
    inst.n = 11;
    inst.weights.assign(121, 1);
    lop::save_instance(inst, big);
  }
  CHECK(run_command(cli() + " exact " + big.string()).exit_code == 4);
  fs::remove_all(dir);
}

TEST_CASE("cli: parse and config failures use distinct exit codes") {
  const auto dir = testsup::scratch_dir("err");
  const auto bad = dir / "bad.mat";
  {
    std::ofstream out(bad);
    out << "2\n0 5 3\n";  // one token short
  }
  CHECK(run_command(cli() + " solve " + bad.string()).exit_code == 2);
  CHECK(run_command(cli() + " solve " + dir.string() + "/missing.mat").exit_code == 2);

  const auto ok = dir / "ok.mat";
  {
    std::ofstream out(ok);
    out << "2\n0 5 3 0\n";
  }
  CHECK(run_command(cli() + " solve " + ok.string() +
                    " --m 30 --max-generations 5")
            .exit_code == 3);  // m > p
  CHECK(run_command(cli() + " solve " + ok.string() +
                    " --max-generations 0")
            .exit_code == 3);  // no stop condition
  CHECK(run_command(cli() + " solve " + ok.string() +
                    " --pool-strategy bogus --max-generations 5")
            .exit_code == 3);
  fs::remove_all(dir);
}

TEST_CASE("cli: solve finds the 3x3 optimum and reports it 1-based") {
  const auto dir = testsup::scratch_dir("solve");
  const auto file = dir / "t3.mat";
  {
    std::ofstream out(file);
    out << "t3\n3\n0 1 2\n3 0 4\n5 6 0\n";
  }
  const auto res = run_command(cli() + " solve " + file.string() +
                               " --seed 1 --p 6 --c 2 --max-generations 10");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("best_objective 14") != std::string::npos);
  CHECK(res.output.find("best_permutation 3 2 1") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: bench emits runs-per-cell rows plus per-instance aggregates") {
  const auto dir = testsup::scratch_dir("bench");
  REQUIRE(run_command(cli() + " gen " + (dir / "a.mat").string() +
                      " --n 8 --low 0 --high 100 --seed 1")
              .exit_code == 0);
  REQUIRE(run_command(cli() + " gen " + (dir / "b.mat").string() +
                      " --n 8 --low 0 --high 100 --seed 2")
              .exit_code == 0);
  const auto res = run_command(cli() + " bench " + dir.string() +
                               " --runs 3 --max-generations 50 --jobs 2");
  CHECK(res.exit_code == 0);
  CHECK(count_lines_with_commas(res.output, "# section=runs", "# section=aggregates") == 6);
  CHECK(count_lines_with_commas(res.output, "# section=aggregates", "") == 2);

  // Aggregates recomputed from the rows must match the emitted aggregates.
  std::istringstream in(res.output);
  std::string line;
  bool in_runs = false, in_aggs = false;
  struct Agg {
    long long best = -1;
    double sum = 0;
    int count = 0;
  };
  std::map<std::string, Agg> recompute;
  std::map<std::string, std::pair<long long, double>> emitted;
  while (std::getline(in, line)) {
    if (line.rfind("# section=runs", 0) == 0) {
      in_runs = true;
      in_aggs = false;
      continue;
    }
    if (line.rfind("# section=aggregates", 0) == 0) {
      in_runs = false;
      in_aggs = true;
      continue;
    }
    if (line.empty() || line[0] == '#' || line.rfind("instance,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (in_runs && fields.size() >= 5) {
      auto& agg = recompute[fields[0]];
      const long long best = std::stoll(fields[4]);
      agg.best = std::max(agg.best, best);
      agg.sum += static_cast<double>(best);
      agg.count += 1;
    } else if (in_aggs && fields.size() >= 5) {
      emitted[fields[0]] = {std::stoll(fields[3]), std::stod(fields[4])};
    }
  }
  REQUIRE(emitted.size() == 2);
  for (const auto& [name, values] : emitted) {
    REQUIRE(recompute.count(name) == 1);
    CHECK(values.first == recompute[name].best);
    CHECK(values.second ==
          doctest::Approx(recompute[name].sum / recompute[name].count));
  }

  // At n=8 the budget is generous: aggregate bests hit the exhaustive optima.
  CHECK(emitted["gen-n8-s1"].first ==
        lop::oracle::exact_solve(lop::generate_instance({8, 0, 100, 1})).optimum);
  CHECK(emitted["gen-n8-s2"].first ==
        lop::oracle::exact_solve(lop::generate_instance({8, 0, 100, 2})).optimum);
  fs::remove_all(dir);
}

TEST_CASE("cli: bench reports and skips unparseable instances, nonzero exit") {
  const auto dir = testsup::scratch_dir("benchskip");
  REQUIRE(run_command(cli() + " gen " + (dir / "a.mat").string() +
                      " --n 6 --low 0 --high 10 --seed 3")
              .exit_code == 0);
  {
    std::ofstream out(dir / "broken.mat");
    out << "4\n1 2 3\n";
  }
  const auto res = run_command(cli() + " bench " + dir.string() +
                               " --runs 2 --max-generations 5");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("skip") != std::string::npos);
  CHECK(res.output.find("gen-n6-s3") != std::string::npos);  // good one still ran
  fs::remove_all(dir);
}

TEST_CASE("cli: ablation parents mode emits one row per m, same instance digest") {
  const auto dir = testsup::scratch_dir("abl");
  REQUIRE(run_command(cli() + " gen " + (dir / "a.mat").string() +
                      " --n 10 --low 0 --high 50 --seed 4")
              .exit_code == 0);
  const auto res = run_command(cli() + " ablation " + (dir / "a.mat").string() +
                               " --mode parents --runs 2 --max-generations 10" +
                               " --p 8 --c 3 --format json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"m=2\"") != std::string::npos);
  CHECK(res.output.find("\"m=3\"") != std::string::npos);
  CHECK(res.output.find("\"m=4\"") != std::string::npos);
  CHECK(res.output.find("instance_digest") != std::string::npos);

  const auto pool = run_command(cli() + " ablation " + (dir / "a.mat").string() +
                                " --mode pool --runs 1 --max-generations 10 --p 8 --c 3");
  CHECK(pool.exit_code == 0);
  CHECK(pool.output.find("ovbs") != std::string::npos);
  CHECK(pool.output.find("alpha=0.8") != std::string::npos);
  CHECK(pool.output.find("alpha=rand(0.8,1.0)") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: solve output and trace are reproducible modulo wall-clock") {
  const auto dir = testsup::scratch_dir("det");
  const auto file = dir / "d.mat";
  REQUIRE(run_command(cli() + " gen " + file.string() +
                      " --n 15 --low 0 --high 100 --seed 9")
              .exit_code == 0);
  const std::string base_cmd = cli() + " solve " + file.string() +
                               " --seed 42 --max-generations 20 --trace ";
  const auto r1 = run_command(base_cmd + (dir / "t1.csv").string());
  const auto r2 = run_command(base_cmd + (dir / "t2.csv").string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);

  auto strip_times = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
      if (line.rfind("time_to_best_ms", 0) == 0) continue;
      // Trace rows: drop the trailing elapsed_ms column.
      const auto last_comma = line.rfind(',');
      if (line.find(',') != std::string::npos && last_comma != std::string::npos &&
          line[0] != '#' && line.find("generation,") != 0)
        line = line.substr(0, last_comma);
      out += line + '\n';
    }
    return out;
  };
  CHECK(strip_times(r1.output) == strip_times(r2.output));

  std::ifstream t1(dir / "t1.csv"), t2(dir / "t2.csv");
  std::stringstream s1, s2;
  s1 << t1.rdbuf();
  s2 << t2.rdbuf();
  CHECK(strip_times(s1.str()) == strip_times(s2.str()));
  fs::remove_all(dir);
}
