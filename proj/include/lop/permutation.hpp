#pragma once

#include <cstdint>
#include <vector>

#include "lop/rng.hpp"

namespace lop {

// An ordering of {0..n-1}; order[k] is the element placed at rank k.
struct Permutation {
  std::vector<int> order;

  Permutation() = default;
  explicit Permutation(std::vector<int> o) : order(std::move(o)) {}

  static Permutation identity(int n);
  static Permutation random(int n, Rng& rng);

  int size() const { return static_cast<int>(order.size()); }
  int operator[](int k) const { return order[k]; }

  // True when order is a bijection on {0..n-1}.
  bool is_valid() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Removes the element at position i and reinserts it at position j, shifting
// the elements in between. Positions are 0-based. Throws std::out_of_range
// for bad positions and std::invalid_argument when i == j.
Permutation apply_insert(const Permutation& perm, int i, int j);

// A permutation with its cached objective value. The cache is maintained by
// every operation that produces individuals.
struct Individual {
  Permutation perm;
  std::int64_t objective = 0;
  std::uint64_t birth_generation = 0;
};

}  // namespace lop
