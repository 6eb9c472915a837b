#pragma once

// Brute-force references. Everything here favors obviousness over speed and
// stays independent of the incremental code paths it is used to check.

#include <cstdint>
#include <optional>

#include "lop/instance.hpp"
#include "lop/permutation.hpp"
#include "lop/search.hpp"

namespace lop::oracle {

inline constexpr int kExactSolveMaxN = 10;

struct ExactResult {
  std::int64_t optimum = 0;
  Permutation witness;
};

// Evaluates all n! orderings in lexicographic sequence; returns the maximum
// objective and the lexicographically smallest permutation attaining it.
// Throws GuardError when n > kExactSolveMaxN.
ExactResult exact_solve(const LopInstance& inst);

// f(apply_insert(perm, i, j)) - f(perm), both evaluated from scratch.
std::int64_t naive_delta(const LopInstance& inst, const Permutation& perm,
                         int i, int j);

// Argmax over all insert moves by full re-evaluation; identical scan order
// and tie-break to scan_best_move.
std::optional<Move> naive_best_move(const LopInstance& inst,
                                    const Permutation& perm);

// Textbook O(n^2) LCS dynamic program.
int lcs_length_dp(const Permutation& a, const Permutation& b);
int lcs_distance_dp(const Permutation& a, const Permutation& b);

}  // namespace lop::oracle
