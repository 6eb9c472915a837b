#include "lop/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "lop/errors.hpp"

namespace lop::oracle {

ExactResult exact_solve(const LopInstance& inst) {
  if (inst.n > kExactSolveMaxN)
    throw GuardError("exact_solve guard: n = " + std::to_string(inst.n) +
                     " exceeds the cap of " + std::to_string(kExactSolveMaxN));
  Permutation perm = Permutation::identity(inst.n);
  ExactResult result{evaluate(inst, perm), perm};
  // Lexicographic enumeration with a strict improvement test keeps the
  // lexicographically smallest maximizer.
  while (std::next_permutation(perm.order.begin(), perm.order.end())) {
    const std::int64_t f = evaluate(inst, perm);
    if (f > result.optimum) {
      result.optimum = f;
      result.witness = perm;
    }
  }
  return result;
}

std::int64_t naive_delta(const LopInstance& inst, const Permutation& perm,
                         int i, int j) {
  return evaluate(inst, apply_insert(perm, i, j)) - evaluate(inst, perm);
}

std::optional<Move> naive_best_move(const LopInstance& inst,
                                    const Permutation& perm) {
  const int n = perm.size();
  std::optional<Move> best;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::int64_t d = naive_delta(inst, perm, i, j);
      if (!best || d > best->delta) best = Move{i, j, d};
    }
  if (best && best->delta > 0) return best;
  return std::nullopt;
}

int lcs_length_dp(const Permutation& a, const Permutation& b) {
  const int n = a.size();
  if (b.size() != n)
    throw std::invalid_argument("lcs_length_dp: length mismatch");
  std::vector<std::vector<int>> table(n + 1, std::vector<int>(n + 1, 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (a[i - 1] == b[j - 1])
        table[i][j] = table[i - 1][j - 1] + 1;
      else
        table[i][j] = std::max(table[i - 1][j], table[i][j - 1]);
    }
  return table[n][n];
}

int lcs_distance_dp(const Permutation& a, const Permutation& b) {
  return a.size() - lcs_length_dp(a, b);
}

}  // namespace lop::oracle
