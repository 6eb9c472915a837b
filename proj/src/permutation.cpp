#include "lop/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lop {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0);
  return p;
}

Permutation Permutation::random(int n, Rng& rng) {
  Permutation p = identity(n);
  std::shuffle(p.order.begin(), p.order.end(), rng);
  return p;
}

bool Permutation::is_valid() const {
  const int n = size();
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation apply_insert(const Permutation& perm, int i, int j) {
  const int n = perm.size();
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("insert position out of range: i=" + std::to_string(i) +
                            " j=" + std::to_string(j) + " n=" + std::to_string(n));
  if (i == j) throw std::invalid_argument("insert requires i != j");
  Permutation out = perm;
  if (i < j)
    std::rotate(out.order.begin() + i, out.order.begin() + i + 1,
                out.order.begin() + j + 1);
  else
    std::rotate(out.order.begin() + j, out.order.begin() + i,
                out.order.begin() + i + 1);
  return out;
}

}  // namespace lop
