#include <doctest.h>

#include "lop/errors.hpp"
#include "lop/oracle.hpp"
#include "test_support.hpp"

using namespace lop;

namespace {

LopInstance make3x3() {
  LopInstance inst;
  inst.name = "t3";
  inst.n = 3;
  inst.weights = {0, 1, 2, 3, 0, 4, 5, 6, 0};
  return inst;
}

}  // namespace

TEST_CASE("exact_solve on a single element") {
  LopInstance inst;
  inst.n = 1;
  inst.weights = {7};  // diagonal is never read
  const auto res = oracle::exact_solve(inst);
  CHECK(res.optimum == 0);
  CHECK(res.witness.order == std::vector<int>{0});
}

TEST_CASE("exact_solve on the 3x3 instance") {
  // Enumeration of all 6 orderings: f ranges over {7,9,9,12,12,14}.
  const auto res = oracle::exact_solve(make3x3());
  CHECK(res.optimum == 14);
  CHECK(res.witness.order == std::vector<int>{2, 1, 0});
}

TEST_CASE("exact_solve: symmetric matrix makes every ordering equal") {
  Rng rng(11);
  LopInstance inst = testsup::random_instance(6, rng, 0, 50);
  for (int i = 0; i < inst.n; ++i)
    for (int j = i + 1; j < inst.n; ++j) inst.weight(j, i) = inst.weight(i, j);
  const auto res = oracle::exact_solve(inst);
  CHECK(res.witness.order == Permutation::identity(6).order);
  Permutation probe = Permutation::identity(6);
  Rng shuffler(5);
  for (int t = 0; t < 10; ++t) {
    probe = Permutation::random(6, shuffler);
    CHECK(evaluate(inst, probe) == res.optimum);
  }
}

TEST_CASE("exact_solve witness is the lexicographically smallest maximizer") {
  LopInstance zero;
  zero.n = 4;
  zero.weights.assign(16, 0);
  const auto res = oracle::exact_solve(zero);
  CHECK(res.optimum == 0);
  CHECK(res.witness.order == Permutation::identity(4).order);
}

TEST_CASE("exact_solve guard") {
  LopInstance inst;
  inst.n = 11;
  inst.weights.assign(121, 0);
  CHECK_THROWS_AS(oracle::exact_solve(inst), GuardError);
}

TEST_CASE("naive_delta: adjacent move is the single flipped pair") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const LopInstance inst = testsup::random_instance(8, rng);
    const Permutation perm = Permutation::random(8, rng);
    const int i = std::uniform_int_distribution<int>(0, 6)(rng);
    const std::int64_t expected =
        inst.weight(perm[i + 1], perm[i]) - inst.weight(perm[i], perm[i + 1]);
    CHECK(oracle::naive_delta(inst, perm, i, i + 1) == expected);
  }
}

TEST_CASE("naive_delta: symmetric matrix gives zero") {
  Rng rng(22);
  LopInstance inst = testsup::random_instance(7, rng, 0, 9);
  for (int i = 0; i < inst.n; ++i)
    for (int j = i + 1; j < inst.n; ++j) inst.weight(j, i) = inst.weight(i, j);
  const Permutation perm = Permutation::random(7, rng);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      if (i != j) CHECK(oracle::naive_delta(inst, perm, i, j) == 0);
}

TEST_CASE("lcs DP basics") {
  const Permutation a({0, 1, 2, 3});
  const Permutation b({3, 2, 1, 0});
  CHECK(oracle::lcs_length_dp(a, a) == 4);
  CHECK(oracle::lcs_length_dp(a, b) == 1);
  CHECK(oracle::lcs_distance_dp(a, b) == 3);
}
