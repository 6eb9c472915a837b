#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lop/permutation.hpp"

namespace lop {

// n minus the length of the longest common subsequence of a and b. 0 iff
// a == b; at most n-1, since any shared element is a common subsequence.
// Uses the longest-increasing-subsequence reduction valid for permutations.
int lcs_distance(const Permutation& a, const Permutation& b);

// Symmetric table of pairwise lcs_distance values, zero diagonal.
struct DistanceMatrix {
  int size = 0;
  std::vector<int> d;

  int at(int i, int j) const { return d[static_cast<std::size_t>(i) * size + j]; }
  int& at(int i, int j) { return d[static_cast<std::size_t>(i) * size + j]; }
};

DistanceMatrix pairwise_distances(std::span<const Individual> pool);

// Minimum lcs_distance between s and any pool member, excluding the member
// at self_index when given. A value-duplicate of s at another index counts
// and yields 0. Throws when no eligible member exists.
int distance_to_population(const Permutation& s, std::span<const Individual> pool,
                           std::optional<int> self_index = std::nullopt);

// Mean pairwise lcs_distance over all p(p-1)/2 pairs; requires p >= 2.
double population_diversity(std::span<const Individual> pool);
double population_diversity(const DistanceMatrix& dm);

struct ScoreWeights {
  double alpha = 1.0;  // in [0,1]; weight of the quality term
};

// Range-normalizes y against [y_min, y_max] as (y - y_min) / (y_max - y_min + 1).
// The +1 keeps the denominator positive when all values coincide, so every
// output lies in [0, 1).
double range_normalize(std::int64_t y, std::int64_t y_min, std::int64_t y_max);

// Per-member quality-and-distance score over one pool:
//   alpha * norm(objective) + (1 - alpha) * norm(min distance to the rest).
// Distances are taken within `pool` itself, excluding each member by index.
std::vector<double> score_population(std::span<const Individual> pool,
                                     ScoreWeights weights);

// Same scoring from precomputed objectives and distances.
std::vector<double> score_members(std::span<const std::int64_t> objectives,
                                  std::span<const int> distances, double alpha);

}  // namespace lop
