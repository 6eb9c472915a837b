#include "lop/memetic.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "lop/errors.hpp"
#include "lop/search.hpp"

namespace lop {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

double draw_uniform(double low, double high, Rng& rng) {
  if (low == high) return low;
  return std::uniform_real_distribution<double>(low, high)(rng);
}

int draw_index(int bound, Rng& rng) {
  return std::uniform_int_distribution<int>(0, bound - 1)(rng);
}

std::vector<int> sample_distinct(int population, int count, Rng& rng) {
  std::vector<int> pool(population);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t) {
    const int r = draw_index(population - t, rng);
    out.push_back(pool[r]);
    std::swap(pool[r], pool[population - t - 1]);
  }
  return out;
}

// Ranks the merged pool and returns the indices of the p survivors, best
// first. Shared by the public update_pool and the engine's cached path.
std::vector<int> survivor_indices(std::span<const Individual> merged,
                                  const DistanceMatrix& dm, double alpha,
                                  PoolStrategy strategy, int keep) {
  const int total = static_cast<int>(merged.size());
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);

  auto structural_tie = [&](int a, int b) {
    if (merged[a].objective != merged[b].objective)
      return merged[a].objective > merged[b].objective;
    return merged[a].birth_generation < merged[b].birth_generation;
  };

  if (strategy == PoolStrategy::score_based) {
    std::vector<std::int64_t> objectives(total);
    std::vector<int> distances(total);
    for (int i = 0; i < total; ++i) {
      objectives[i] = merged[i].objective;
      int best = std::numeric_limits<int>::max();
      for (int j = 0; j < total; ++j)
        if (j != i) best = std::min(best, dm.at(i, j));
      distances[i] = best;
    }
    const std::vector<double> scores = score_members(objectives, distances, alpha);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      if (structural_tie(a, b)) return true;
      if (structural_tie(b, a)) return false;
      return false;  // equal on all keys: stable sort keeps merge order
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (structural_tie(a, b)) return true;
      if (structural_tie(b, a)) return false;
      return false;
    });
  }
  order.resize(keep);
  return order;
}

// Grows a p x p distance matrix to cover `merged` (the original members
// plus appended offspring), computing only the new pairs.
DistanceMatrix extend_distances(const DistanceMatrix& base,
                                std::span<const Individual> merged) {
  const int p = base.size;
  const int total = static_cast<int>(merged.size());
  DistanceMatrix dm;
  dm.size = total;
  dm.d.assign(static_cast<std::size_t>(total) * total, 0);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      dm.at(i, j) = base.at(i, j);
      dm.at(j, i) = base.at(i, j);
    }
  for (int j = p; j < total; ++j)
    for (int i = 0; i < j; ++i) {
      const int d = lcs_distance(merged[i].perm, merged[j].perm);
      dm.at(i, j) = d;
      dm.at(j, i) = d;
    }
  return dm;
}

DistanceMatrix submatrix(const DistanceMatrix& dm, std::span<const int> indices) {
  const int k = static_cast<int>(indices.size());
  DistanceMatrix out;
  out.size = k;
  out.d.assign(static_cast<std::size_t>(k) * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out.at(i, j) = dm.at(indices[i], indices[j]);
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (population_size < 2) throw ConfigError("population size must be at least 2");
  if (parent_count < 2 || parent_count > population_size)
    throw ConfigError("parent count must satisfy 2 <= m <= p (m=" +
                      std::to_string(parent_count) + ", p=" +
                      std::to_string(population_size) + ")");
  if (offspring_count < 1) throw ConfigError("offspring count must be at least 1");
  if (stagnation_limit < 1) throw ConfigError("stagnation limit must be at least 1");
  if (!(beta_low >= 0.0 && beta_low <= beta_high && beta_high <= 1.0))
    throw ConfigError("beta range must satisfy 0 <= low <= high <= 1");
  if (!(alpha_low >= 0.0 && alpha_low <= alpha_high && alpha_high <= 1.0))
    throw ConfigError("alpha range must satisfy 0 <= low <= high <= 1");
  if (selection_retry_cap < 1) throw ConfigError("selection retry cap must be positive");
  if (stop.max_generations == 0 && stop.time_limit_ms <= 0)
    throw ConfigError("no termination condition: set a generation or time limit");
}

std::string config_digest(const SolverConfig& cfg) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "p=%d;c=%d;g=%d;m=%d;beta=%.17g,%.17g;alpha=%.17g,%.17g;"
                "pool=%d;seed=%llu;maxgen=%llu;tl=%lld;cap=%d",
                cfg.population_size, cfg.offspring_count, cfg.stagnation_limit,
                cfg.parent_count, cfg.beta_low, cfg.beta_high, cfg.alpha_low,
                cfg.alpha_high, static_cast<int>(cfg.pool_strategy),
                static_cast<unsigned long long>(cfg.seed),
                static_cast<unsigned long long>(cfg.stop.max_generations),
                static_cast<long long>(cfg.stop.time_limit_ms),
                cfg.selection_retry_cap);
  char out[17];
  std::snprintf(out, sizeof out, "%016llx",
                static_cast<unsigned long long>(fnv1a64(buf)));
  return std::string(out);
}

void Population::refresh_sum() {
  objective_sum = 0;
  for (const Individual& ind : members) objective_sum += ind.objective;
}

double Population::average_objective() const {
  return members.empty() ? 0.0
                         : static_cast<double>(objective_sum) / members.size();
}

Population init_population(const LopInstance& inst, const SolverConfig& cfg,
                           Rng& rng) {
  Population pop;
  pop.members.reserve(cfg.population_size);
  for (int i = 0; i < cfg.population_size; ++i)
    pop.members.push_back(local_search(inst, Permutation::random(inst.n, rng)));
  pop.refresh_sum();
  return pop;
}

SelectionResult select_parents(std::span<const Individual> pool,
                               const DistanceMatrix& dm, double diversity,
                               int m, double beta, Rng& rng, int retry_cap) {
  const int p = static_cast<int>(pool.size());
  if (m < 2 || m > p)
    throw std::invalid_argument("select_parents: need 2 <= m <= pool size");
  const double threshold = beta * diversity;

  SelectionResult result;
  std::vector<int> subset;
  std::vector<char> taken(p, 0);
  std::vector<int> admissible;
  subset.reserve(m);
  admissible.reserve(p);

  int rebuilds = 0;
  while (rebuilds < retry_cap) {
    subset.clear();
    std::fill(taken.begin(), taken.end(), 0);
    bool stuck = false;
    while (static_cast<int>(subset.size()) < m) {
      admissible.clear();
      for (int idx = 0; idx < p; ++idx) {
        if (taken[idx]) continue;
        bool ok = true;
        for (int s : subset)
          if (static_cast<double>(dm.at(idx, s)) < threshold) {
            ok = false;
            break;
          }
        if (ok) admissible.push_back(idx);
      }
      if (admissible.empty()) {
        stuck = true;
        break;
      }
      const int pick = admissible[draw_index(static_cast<int>(admissible.size()), rng)];
      subset.push_back(pick);
      taken[pick] = 1;
    }
    if (!stuck) {
      result.indices = subset;
      result.reconstructions = rebuilds;
      return result;
    }
    ++rebuilds;
  }

  result.indices = sample_distinct(p, m, rng);
  result.fallback = true;
  result.reconstructions = rebuilds;
  return result;
}

SelectionResult select_parents(std::span<const Individual> pool, int m,
                               double beta, Rng& rng, int retry_cap) {
  const DistanceMatrix dm = pairwise_distances(pool);
  return select_parents(pool, dm, population_diversity(dm), m, beta, rng, retry_cap);
}

std::vector<std::vector<int>> draw_position_sets(int n, int m, Rng& rng) {
  if (m < 2) throw std::invalid_argument("draw_position_sets: need m >= 2");
  const int k = n / m;
  std::vector<int> avail(n);
  std::iota(avail.begin(), avail.end(), 0);
  int remaining = n;
  std::vector<std::vector<int>> sets(m - 1);
  for (auto& set : sets) {
    set.reserve(k);
    for (int t = 0; t < k; ++t) {
      const int r = draw_index(remaining, rng);
      set.push_back(avail[r]);
      std::swap(avail[r], avail[remaining - 1]);
      --remaining;
    }
    std::sort(set.begin(), set.end());
  }
  return sets;
}

Permutation recombine_at_positions(std::span<const Permutation> parents,
                                   std::span<const std::vector<int>> position_sets) {
  if (parents.size() < 2)
    throw std::invalid_argument("recombination needs at least 2 parents");
  const int n = parents[0].size();
  for (const Permutation& par : parents)
    if (par.size() != n)
      throw std::invalid_argument("recombination: length mismatch among parents");
  if (position_sets.size() != parents.size() - 1)
    throw std::invalid_argument("recombination: need one position set per non-copy parent");

  std::vector<char> used(n, 0);
  for (const auto& set : position_sets)
    for (int q : set) {
      if (q < 0 || q >= n) throw std::out_of_range("recombination: position out of range");
      if (used[q]) throw std::invalid_argument("recombination: position sets must be disjoint");
      used[q] = 1;
    }

  Permutation offspring = parents[0];
  std::vector<int> rank(n);
  std::vector<int> positions;
  std::vector<int> elements;
  for (std::size_t t = 0; t < position_sets.size(); ++t) {
    const Permutation& parent = parents[t + 1];
    for (int k = 0; k < n; ++k) rank[parent[k]] = k;
    positions.assign(position_sets[t].begin(), position_sets[t].end());
    std::sort(positions.begin(), positions.end());
    elements.clear();
    for (int q : positions) elements.push_back(offspring[q]);
    std::sort(elements.begin(), elements.end(),
              [&](int a, int b) { return rank[a] < rank[b]; });
    for (std::size_t k = 0; k < positions.size(); ++k)
      offspring.order[positions[k]] = elements[k];
  }
  return offspring;
}

Permutation recombine_mpc(std::span<const Permutation> parents, Rng& rng) {
  if (parents.size() < 2)
    throw std::invalid_argument("recombination needs at least 2 parents");
  const auto sets =
      draw_position_sets(parents[0].size(), static_cast<int>(parents.size()), rng);
  return recombine_at_positions(parents, sets);
}

Population update_pool(const Population& pool,
                       std::span<const Individual> offspring, double alpha,
                       PoolStrategy strategy) {
  const int keep = static_cast<int>(pool.members.size());
  std::vector<Individual> merged = pool.members;
  merged.insert(merged.end(), offspring.begin(), offspring.end());
  const DistanceMatrix dm = pairwise_distances(merged);
  const std::vector<int> survivors = survivor_indices(merged, dm, alpha, strategy, keep);

  Population out;
  out.generation = pool.generation;
  out.stagnation_count = pool.stagnation_count;
  out.members.reserve(keep);
  for (int idx : survivors) out.members.push_back(merged[idx]);
  out.refresh_sum();
  return out;
}

RunResult run(const LopInstance& inst, const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  Rng rng(cfg.seed);

  RunResult result;
  Population pop = init_population(inst, cfg, rng);

  BestTracker& best = result.best;
  best.best = pop.members[0];
  for (const Individual& ind : pop.members)
    if (ind.objective > best.best.objective) best.best = ind;
  best.time_to_best_ms = ms_since(t0);
  best.generation_of_best = 0;

  auto note_candidate = [&](const Individual& ind, std::uint64_t generation) {
    if (ind.objective > best.best.objective) {
      best.best = ind;
      best.generation_of_best = generation;
      best.time_to_best_ms = ms_since(t0);
    }
  };

  DistanceMatrix dists = pairwise_distances(pop.members);
  result.trace.push_back(TraceRow{0, best.best.objective, pop.average_objective(),
                                  population_diversity(dists), 0, 0, ms_since(t0)});

  std::int64_t previous_sum = pop.objective_sum;
  std::vector<Individual> offspring;
  std::vector<Permutation> parents;
  offspring.reserve(cfg.offspring_count);
  parents.reserve(cfg.parent_count);

  std::uint64_t generation = 0;
  while (true) {
    if (cfg.stop.max_generations != 0 && generation >= cfg.stop.max_generations) break;
    if (cfg.stop.time_limit_ms > 0 && ms_since(t0) >= cfg.stop.time_limit_ms) break;
    ++generation;

    // Offspring are bred against the population as it stood at generation
    // start; the distance matrix and diversity stay valid for all c draws.
    const double diversity_now = population_diversity(dists);
    int gen_fallbacks = 0;
    offspring.clear();
    for (int o = 0; o < cfg.offspring_count; ++o) {
      const double beta = draw_uniform(cfg.beta_low, cfg.beta_high, rng);
      const SelectionResult sel = select_parents(
          pop.members, dists, diversity_now, cfg.parent_count, beta, rng,
          cfg.selection_retry_cap);
      if (sel.fallback) ++gen_fallbacks;
      parents.clear();
      for (int idx : sel.indices) parents.push_back(pop.members[idx].perm);
      Individual child = local_search(inst, recombine_mpc(parents, rng));
      child.birth_generation = generation;
      note_candidate(child, generation);
      offspring.push_back(std::move(child));
    }
    result.selection_fallbacks += gen_fallbacks;

    const double alpha = draw_uniform(cfg.alpha_low, cfg.alpha_high, rng);
    std::vector<Individual> merged = std::move(pop.members);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
    const DistanceMatrix merged_dists = extend_distances(dists, merged);
    const std::vector<int> survivors =
        survivor_indices(merged, merged_dists, alpha, cfg.pool_strategy,
                         cfg.population_size);
    pop.members.clear();
    pop.members.reserve(cfg.population_size);
    for (int idx : survivors) pop.members.push_back(std::move(merged[idx]));
    pop.refresh_sum();
    pop.generation = generation;
    dists = submatrix(merged_dists, survivors);

    if (pop.objective_sum == previous_sum)
      ++pop.stagnation_count;
    else
      pop.stagnation_count = 0;
    previous_sum = pop.objective_sum;

    result.trace.push_back(TraceRow{generation, best.best.objective,
                                    pop.average_objective(),
                                    population_diversity(dists),
                                    pop.stagnation_count, gen_fallbacks,
                                    ms_since(t0)});

    if (pop.stagnation_count >= cfg.stagnation_limit) {
      // Restart: keep the incumbent best, refill with fresh local optima.
      pop.members.clear();
      pop.members.push_back(best.best);
      for (int i = 1; i < cfg.population_size; ++i) {
        Individual fresh = local_search(inst, Permutation::random(inst.n, rng));
        fresh.birth_generation = generation;
        note_candidate(fresh, generation);
        pop.members.push_back(std::move(fresh));
      }
      pop.refresh_sum();
      pop.stagnation_count = 0;
      previous_sum = pop.objective_sum;
      dists = pairwise_distances(pop.members);
      ++result.restarts;
    }
  }

  result.generations = generation;
  result.population = std::move(pop);
  return result;
}

}  // namespace lop
