#include "lop/diversity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace lop {

int lcs_distance(const Permutation& a, const Permutation& b) {
  const int n = a.size();
  if (b.size() != n)
    throw std::invalid_argument("lcs_distance: length mismatch (" +
                                std::to_string(n) + " vs " +
                                std::to_string(b.size()) + ")");
  // For permutations LCS(a, b) equals the longest increasing subsequence of
  // a mapped through b's positions; patience tails give it in O(n log n).
  thread_local std::vector<int> pos;
  thread_local std::vector<int> tails;
  pos.resize(n);
  for (int k = 0; k < n; ++k) pos[b[k]] = k;
  tails.clear();
  for (int k = 0; k < n; ++k) {
    const int v = pos[a[k]];
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end())
      tails.push_back(v);
    else
      *it = v;
  }
  return n - static_cast<int>(tails.size());
}

DistanceMatrix pairwise_distances(std::span<const Individual> pool) {
  const int p = static_cast<int>(pool.size());
  DistanceMatrix dm;
  dm.size = p;
  dm.d.assign(static_cast<std::size_t>(p) * p, 0);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const int d = lcs_distance(pool[i].perm, pool[j].perm);
      dm.at(i, j) = d;
      dm.at(j, i) = d;
    }
  return dm;
}

int distance_to_population(const Permutation& s, std::span<const Individual> pool,
                           std::optional<int> self_index) {
  int best = std::numeric_limits<int>::max();
  for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
    if (self_index && *self_index == i) continue;
    best = std::min(best, lcs_distance(s, pool[i].perm));
  }
  if (best == std::numeric_limits<int>::max())
    throw std::invalid_argument("distance_to_population: no eligible member");
  return best;
}

double population_diversity(std::span<const Individual> pool) {
  const int p = static_cast<int>(pool.size());
  if (p < 2) throw std::invalid_argument("population_diversity: need at least 2 members");
  std::int64_t sum = 0;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) sum += lcs_distance(pool[i].perm, pool[j].perm);
  return static_cast<double>(sum) / (static_cast<double>(p) * (p - 1) / 2.0);
}

double population_diversity(const DistanceMatrix& dm) {
  const int p = dm.size;
  if (p < 2) throw std::invalid_argument("population_diversity: need at least 2 members");
  std::int64_t sum = 0;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) sum += dm.at(i, j);
  return static_cast<double>(sum) / (static_cast<double>(p) * (p - 1) / 2.0);
}

double range_normalize(std::int64_t y, std::int64_t y_min, std::int64_t y_max) {
  return static_cast<double>(y - y_min) / static_cast<double>(y_max - y_min + 1);
}

std::vector<double> score_members(std::span<const std::int64_t> objectives,
                                  std::span<const int> distances, double alpha) {
  if (objectives.size() != distances.size())
    throw std::invalid_argument("score_members: size mismatch");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("score_members: alpha must lie in [0,1]");
  const auto [f_min_it, f_max_it] = std::minmax_element(objectives.begin(), objectives.end());
  const auto [d_min_it, d_max_it] = std::minmax_element(distances.begin(), distances.end());
  std::vector<double> scores(objectives.size());
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const double fq = range_normalize(objectives[i], *f_min_it, *f_max_it);
    const double dq = range_normalize(distances[i], *d_min_it, *d_max_it);
    scores[i] = alpha * fq + (1.0 - alpha) * dq;
  }
  return scores;
}

std::vector<double> score_population(std::span<const Individual> pool,
                                     ScoreWeights weights) {
  const int p = static_cast<int>(pool.size());
  if (p < 2) throw std::invalid_argument("score_population: need at least 2 members");
  const DistanceMatrix dm = pairwise_distances(pool);
  std::vector<std::int64_t> objectives(p);
  std::vector<int> distances(p);
  for (int i = 0; i < p; ++i) {
    objectives[i] = pool[i].objective;
    int best = std::numeric_limits<int>::max();
    for (int j = 0; j < p; ++j)
      if (j != i) best = std::min(best, dm.at(i, j));
    distances[i] = best;
  }
  return score_members(objectives, distances, weights.alpha);
}

}  // namespace lop
