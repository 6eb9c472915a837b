#include "lop/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace lop {

namespace {

void check_pair(const LopInstance& inst, const Permutation& perm) {
  if (perm.size() != inst.n)
    throw std::invalid_argument("permutation length " + std::to_string(perm.size()) +
                                " does not match instance dimension " +
                                std::to_string(inst.n));
}

// Antisymmetric difference table diff[a][b] = w(a,b) - w(b,a). Moving an
// element past a neighbor flips exactly one ordered pair, so every delta is
// a running sum over one row of this table.
std::vector<std::int64_t> difference_table(const LopInstance& inst) {
  const int n = inst.n;
  std::vector<std::int64_t> diff(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      diff[static_cast<std::size_t>(a) * n + b] = inst.weight(a, b) - inst.weight(b, a);
  return diff;
}

std::optional<Move> scan_with_table(const std::int64_t* diff, int n,
                                    const Permutation& perm,
                                    std::vector<std::int64_t>& backward,
                                    ScanStats* stats) {
  std::optional<Move> best;
  std::uint64_t examined = 0;
  backward.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::int64_t* row = diff + static_cast<std::size_t>(perm[i]) * n;
    std::int64_t acc = 0;
    for (int h = i - 1; h >= 0; --h) {
      acc += row[perm[h]];
      backward[h] = acc;
    }
    std::int64_t forward = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      std::int64_t d;
      if (j < i) {
        d = backward[j];
      } else {
        forward -= row[perm[j]];
        d = forward;
      }
      ++examined;
      if (!best || d > best->delta) best = Move{i, j, d};
    }
  }
  if (stats) stats->moves_examined = examined;
  if (best && best->delta > 0) return best;
  return std::nullopt;
}

}  // namespace

std::int64_t evaluate(const LopInstance& inst, const Permutation& perm) {
  check_pair(inst, perm);
  const int n = inst.n;
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const std::int64_t* row = inst.weights.data() + static_cast<std::size_t>(perm[i]) * n;
    for (int j = i + 1; j < n; ++j) total += row[perm[j]];
  }
  return total;
}

std::int64_t insert_delta(const LopInstance& inst, const Permutation& perm,
                          int i, int j) {
  check_pair(inst, perm);
  const int n = inst.n;
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("insert position out of range");
  if (i == j) throw std::invalid_argument("insert requires i != j");
  const int a = perm[i];
  std::int64_t d = 0;
  if (i < j) {
    for (int h = i + 1; h <= j; ++h)
      d += inst.weight(perm[h], a) - inst.weight(a, perm[h]);
  } else {
    for (int h = j; h < i; ++h)
      d += inst.weight(a, perm[h]) - inst.weight(perm[h], a);
  }
  return d;
}

std::optional<Move> scan_best_move(const LopInstance& inst,
                                   const Permutation& perm, ScanStats* stats) {
  check_pair(inst, perm);
  std::vector<std::int64_t> diff = difference_table(inst);
  std::vector<std::int64_t> backward;
  return scan_with_table(diff.data(), inst.n, perm, backward, stats);
}

Individual local_search(const LopInstance& inst, Permutation start,
                        std::uint64_t max_moves) {
  check_pair(inst, start);
  const int n = inst.n;
  std::vector<std::int64_t> diff = difference_table(inst);
  std::vector<std::int64_t> backward;
  std::int64_t objective = evaluate(inst, start);
  std::uint64_t moves = 0;
  while (moves < max_moves) {
    auto move = scan_with_table(diff.data(), n, start, backward, nullptr);
    if (!move) break;
    auto& ord = start.order;
    if (move->from < move->to)
      std::rotate(ord.begin() + move->from, ord.begin() + move->from + 1,
                  ord.begin() + move->to + 1);
    else
      std::rotate(ord.begin() + move->to, ord.begin() + move->from,
                  ord.begin() + move->from + 1);
    objective += move->delta;
    ++moves;
  }
  return Individual{std::move(start), objective, 0};
}

}  // namespace lop
