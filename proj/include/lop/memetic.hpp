#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lop/diversity.hpp"
#include "lop/instance.hpp"
#include "lop/permutation.hpp"
#include "lop/rng.hpp"

namespace lop {

enum class PoolStrategy {
  score_based,  // quality-and-distance score ranking
  ovbs,         // objective value only
};

struct StopSpec {
  std::uint64_t max_generations = 1000;  // 0 = unlimited
  std::int64_t time_limit_ms = 0;        // 0 = unlimited
};

struct SolverConfig {
  int population_size = 25;   // p
  int offspring_count = 10;   // c
  int stagnation_limit = 30;  // g: unchanged-average generations before restart
  int parent_count = 3;       // m; 2 is the classic two-parent order-based case
  double beta_low = 0.6;      // parent-selection distance threshold factor,
  double beta_high = 0.7;     // drawn uniformly per selection
  double alpha_low = 0.8;     // pool-update score weight, drawn uniformly
  double alpha_high = 1.0;    // per update
  PoolStrategy pool_strategy = PoolStrategy::score_based;
  std::uint64_t seed = 0;
  StopSpec stop;
  int selection_retry_cap = 50;  // reconstructions before random fallback

  // Throws ConfigError: requires p >= 2, 2 <= m <= p, c >= 1, g >= 1,
  // 0 <= low <= high <= 1 for both ranges, a positive retry cap, and at
  // least one active stop condition.
  void validate() const;
};

// Stable hex digest of every tunable; reports carry it so rows produced by
// the same configuration can be matched up.
std::string config_digest(const SolverConfig& cfg);

struct Population {
  std::vector<Individual> members;
  std::uint64_t generation = 0;
  int stagnation_count = 0;
  std::int64_t objective_sum = 0;  // exact; average = objective_sum / size

  void refresh_sum();
  double average_objective() const;
};

struct BestTracker {
  Individual best;
  std::int64_t time_to_best_ms = 0;
  std::uint64_t generation_of_best = 0;
};

struct TraceRow {
  std::uint64_t generation = 0;
  std::int64_t best_objective = 0;
  double avg_objective = 0.0;
  double diversity = 0.0;
  int stagnation = 0;
  int fallbacks = 0;        // selection fallbacks within this generation
  std::int64_t elapsed_ms = 0;
};
using RunTrace = std::vector<TraceRow>;

struct SelectionResult {
  std::vector<int> indices;  // m distinct member indices
  bool fallback = false;
  int reconstructions = 0;   // abandoned partial subsets
};

struct RunResult {
  BestTracker best;
  RunTrace trace;
  Population population;  // final pool
  std::uint64_t generations = 0;
  int restarts = 0;
  int selection_fallbacks = 0;
};

// p uniformly random permutations, each refined to a local optimum.
Population init_population(const LopInstance& inst, const SolverConfig& cfg,
                           Rng& rng);

// Draws m distinct members whose pairwise distances are all at least
// beta * diversity. Candidates are drawn uniformly among the members that
// keep the partial subset admissible; when none exists the subset is rebuilt
// from scratch. After retry_cap rebuilds the result is m distinct uniform
// members with `fallback` set.
SelectionResult select_parents(std::span<const Individual> pool,
                               const DistanceMatrix& dm, double diversity,
                               int m, double beta, Rng& rng, int retry_cap);
SelectionResult select_parents(std::span<const Individual> pool, int m,
                               double beta, Rng& rng, int retry_cap);

// m-1 disjoint position sets of size floor(n/m) each, drawn uniformly
// without replacement and returned in ascending order.
std::vector<std::vector<int>> draw_position_sets(int n, int m, Rng& rng);

// Deterministic-position recombination core: copies parents[0], then for
// each later parent reorders the elements at its position set to follow
// their relative order in that parent. position_sets must hold one disjoint,
// in-range set per non-copy parent.
Permutation recombine_at_positions(std::span<const Permutation> parents,
                                   std::span<const std::vector<int>> position_sets);

// Multi-parent order-based recombination: recombine_at_positions over
// freshly drawn position sets. With m = 2 this is the two-parent operator
// with floor(n/2) reordered positions.
Permutation recombine_mpc(std::span<const Permutation> parents, Rng& rng);

// Merges pool and offspring (p + c individuals), ranks them, and keeps the
// best p. score_based ranks by the quality-and-distance score computed over
// the merged pool with the given alpha; ovbs ranks by objective alone.
// Ties break toward higher objective, then lower birth generation, then
// merge order. Bookkeeping counters carry over from `pool`.
Population update_pool(const Population& pool,
                       std::span<const Individual> offspring, double alpha,
                       PoolStrategy strategy);

// Full solver loop: per generation, c offspring (each: draw beta, select
// parents, recombine, local search), one pool update with a fresh alpha,
// stagnation tracking on the exact average objective, and a restart that
// rebuilds the pool around the incumbent best after g flat generations.
// Deterministic given (inst, cfg).
RunResult run(const LopInstance& inst, const SolverConfig& cfg);

}  // namespace lop
