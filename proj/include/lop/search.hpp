#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "lop/instance.hpp"
#include "lop/permutation.hpp"

namespace lop {

// Sum of weights strictly above the diagonal of the permuted matrix:
// sum over ranks i < j of weight(perm[i], perm[j]). Exact 64-bit arithmetic.
std::int64_t evaluate(const LopInstance& inst, const Permutation& perm);

// Objective change of apply_insert(perm, i, j), computed incrementally in
// O(|i-j|) from the pairs the move actually flips.
std::int64_t insert_delta(const LopInstance& inst, const Permutation& perm,
                          int i, int j);

struct Move {
  int from = 0;
  int to = 0;
  std::int64_t delta = 0;
};

struct ScanStats {
  std::uint64_t moves_examined = 0;
};

// Best-improvement scan of the whole insert neighborhood in O(n^2) total,
// accumulating deltas along each row of target positions. Among equal
// deltas the first move in ascending (from, then to) order wins. Returns
// nothing when no move improves the objective.
std::optional<Move> scan_best_move(const LopInstance& inst,
                                   const Permutation& perm,
                                   ScanStats* stats = nullptr);

inline constexpr std::uint64_t kUnlimitedMoves =
    std::numeric_limits<std::uint64_t>::max();

// Steepest-ascent local search under the insert neighborhood: apply the best
// improving move until none exists (or max_moves were accepted). The
// objective strictly increases at every step.
Individual local_search(const LopInstance& inst, Permutation start,
                        std::uint64_t max_moves = kUnlimitedMoves);

}  // namespace lop
