// Copyright 2026 The ecodiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECODIV_SURVIVAL_HPP
#define ECODIV_SURVIVAL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ecodiv/community.hpp"
#include "ecodiv/error.hpp"
#include "ecodiv/indices.hpp"

/**
 * \file
 * \brief Monte Carlo survival of a software ecosystem under neutral drift and
 * targeted shocks.
 *
 * The population is N discrete installations. One step is:
 *   1. Wright-Fisher resampling: N individuals drawn multinomially from the
 *      current frequencies.
 *   2. With probability `shock_rate`, an exploit hits one surviving species,
 *      chosen with probability proportional to p_i^targeting_exponent, and
 *      removes floor(shock_kill_fraction * count) of its individuals. The
 *      population is then resampled back to N from the post-shock counts.
 * A species whose count reaches zero never returns.
 *
 * Trial `k` draws from std::mt19937_64 seeded with
 * std::seed_seq{seed_lo, seed_hi, k_lo, k_hi} (32-bit halves), so a report
 * depends only on the community and the model, never on the thread count.
 */

namespace ecodiv {

struct SurvivalModel {
  std::uint64_t population_size = 100;
  double shock_rate = 0.0;
  double shock_kill_fraction = 0.5;
  double targeting_exponent = 1.0;
  std::uint64_t horizon = 1000;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;

  void validate() const {
    const auto fail = [](const std::string& what) { throw Error(Errc::InvalidModel, what); };
    if (population_size < 2) fail("population size must be at least 2");
    if (!(shock_rate >= 0.0 && shock_rate <= 1.0)) fail("shock rate must lie in [0, 1]");
    if (!(shock_kill_fraction >= 0.0 && shock_kill_fraction <= 1.0)) fail("kill fraction must lie in [0, 1]");
    if (!(targeting_exponent >= 0.0) || !std::isfinite(targeting_exponent)) {
      fail("targeting exponent must be a finite value >= 0");
    }
    if (horizon < 1) fail("horizon must be at least 1 step");
    if (trials < 1) fail("at least one trial is required");
  }
};

struct SpeciesSurvival {
  std::string label;
  double extinction_probability = 0.0;
  /// Mean step of extinction; trials in which the species outlived the
  /// horizon count as `horizon`.
  double mean_time_to_extinction = 0.0;
  std::uint64_t censored_trials = 0;

  [[nodiscard]] bool censored() const noexcept { return censored_trials > 0; }
};

struct SurvivalPoint {
  std::uint64_t step = 0;
  /// Fraction of trials with at least two surviving species after `step`.
  double fraction = 0.0;
};

struct SurvivalReport {
  std::vector<SpeciesSurvival> per_species;
  std::vector<SurvivalPoint> survival_curve;       // steps 0..horizon
  std::vector<double> diversity_trajectory;        // mean Hill number (q = 1) per step
  std::uint64_t trials_run = 0;
  std::uint64_t seed = 0;

  [[nodiscard]] double final_survival() const noexcept {
    return survival_curve.empty() ? 0.0 : survival_curve.back().fraction;
  }
};

namespace detail {

using Engine = std::mt19937_64;

inline Engine trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Engine(seq);
}

/// Rounds N * p_i to integers summing to exactly N: floors first, then the
/// remaining units go to the largest fractional parts (ties to lower index).
inline std::vector<std::uint64_t> largest_remainder(std::span<const double> abundances, std::uint64_t n) {
  const double total = std::accumulate(abundances.begin(), abundances.end(), 0.0);
  std::vector<std::uint64_t> counts(abundances.size(), 0);
  std::vector<double> remainder(abundances.size(), 0.0);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < abundances.size(); ++i) {
    const double exact = static_cast<double>(n) * abundances[i] / total;
    counts[i] = static_cast<std::uint64_t>(std::floor(exact));
    remainder[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  // Floating rounding can overshoot by a unit when p_i * N is integral.
  while (assigned > n) {
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  std::vector<std::size_t> order(abundances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % order.size()) {
    if (abundances[order[k]] <= 0.0) continue;
    ++counts[order[k]];
    ++assigned;
  }
  return counts;
}

/// Draws `n` individuals with replacement from `from` into `out`, as a chain
/// of conditional binomials in species order.
inline void multinomial_resample(std::span<const std::uint64_t> from, std::uint64_t n,
                                 std::span<std::uint64_t> out, Engine& rng) {
  std::uint64_t mass = std::accumulate(from.begin(), from.end(), std::uint64_t{0});
  std::uint64_t remaining = n;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from[i] == 0 || remaining == 0) {
      out[i] = 0;
      mass -= from[i];
      continue;
    }
    if (from[i] == mass) {
      out[i] = remaining;
    } else {
      const double p = static_cast<double>(from[i]) / static_cast<double>(mass);
      std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(remaining), p);
      out[i] = static_cast<std::uint64_t>(draw(rng));
    }
    remaining -= out[i];
    mass -= from[i];
  }
}

/// Population of one trial.
struct TrialState {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> scratch;

  [[nodiscard]] std::uint64_t total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  }
  [[nodiscard]] std::size_t alive() const noexcept {
    return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
  }
};

/// Advances one step. Returns true when a shock struck.
inline bool advance(TrialState& state, const SurvivalModel& model, Engine& rng) {
  const std::uint64_t n = model.population_size;
  state.scratch.resize(state.counts.size());
  multinomial_resample(state.counts, n, state.scratch, rng);
  std::swap(state.counts, state.scratch);

  std::bernoulli_distribution shock(model.shock_rate);
  if (!shock(rng)) return false;

  // Weights p_i^tau, scaled by the largest so that large exponents cannot
  // underflow every weight to zero.
  const std::uint64_t largest = *std::max_element(state.counts.begin(), state.counts.end());
  const auto weight = [&](std::uint64_t c) {
    return std::exp(model.targeting_exponent *
                    (std::log(static_cast<double>(c)) - std::log(static_cast<double>(largest))));
  };
  double weight_total = 0.0;
  for (auto c : state.counts) {
    if (c > 0) weight_total += weight(c);
  }
  std::uniform_real_distribution<double> pick(0.0, weight_total);
  const double u = pick(rng);
  std::size_t target = state.counts.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < state.counts.size(); ++i) {
    if (state.counts[i] == 0) continue;
    target = i;
    acc += weight(state.counts[i]);
    if (u < acc) break;
  }

  auto kills = static_cast<std::uint64_t>(
      std::floor(model.shock_kill_fraction * static_cast<double>(state.counts[target])));
  // The ecosystem as a whole never vanishes: a lone survivor keeps one individual.
  if (kills >= n) kills = n - 1;
  state.counts[target] -= kills;

  multinomial_resample(state.counts, n, state.scratch, rng);
  std::swap(state.counts, state.scratch);
  return true;
}

inline double counts_diversity(std::span<const std::uint64_t> counts, std::uint64_t n) {
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return std::exp(h);
}

/// Per-step sums over a contiguous block of trials.
struct Tally {
  std::vector<std::uint64_t> multi_species;  // trials with >= 2 species, per step
  std::vector<double> diversity_sum;         // per step
  std::vector<std::uint64_t> extinctions;    // per species
  std::vector<std::uint64_t> extinction_time_sum;

  Tally(std::size_t species, std::uint64_t horizon)
      : multi_species(horizon + 1, 0),
        diversity_sum(horizon + 1, 0.0),
        extinctions(species, 0),
        extinction_time_sum(species, 0) {}

  void merge(const Tally& other) {
    for (std::size_t t = 0; t < multi_species.size(); ++t) {
      multi_species[t] += other.multi_species[t];
      diversity_sum[t] += other.diversity_sum[t];
    }
    for (std::size_t i = 0; i < extinctions.size(); ++i) {
      extinctions[i] += other.extinctions[i];
      extinction_time_sum[i] += other.extinction_time_sum[i];
    }
  }
};

inline void run_trial(std::span<const std::uint64_t> initial, const SurvivalModel& model,
                      std::uint64_t trial, Tally& tally) {
  Engine rng = trial_engine(model.seed, trial);
  TrialState state{{initial.begin(), initial.end()}, {}};
  std::vector<std::uint64_t> died_at(initial.size(), model.horizon);
  std::vector<bool> extinct(initial.size(), false);

  const auto record = [&](std::uint64_t step) {
    for (std::size_t i = 0; i < state.counts.size(); ++i) {
      if (!extinct[i] && state.counts[i] == 0) {
        extinct[i] = true;
        died_at[i] = step;
      }
    }
    if (state.alive() >= 2) ++tally.multi_species[step];
    tally.diversity_sum[step] += counts_diversity(state.counts, model.population_size);
  };

  record(0);
  std::uint64_t step = 0;
  while (step < model.horizon && state.alive() >= 2) {
    ++step;
    advance(state, model, rng);
    record(step);
  }
  // A lone survivor is absorbing: diversity stays at 1.
  for (std::uint64_t rest = step + 1; rest <= model.horizon; ++rest) tally.diversity_sum[rest] += 1.0;

  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (extinct[i]) ++tally.extinctions[i];
    tally.extinction_time_sum[i] += died_at[i];
  }
}

inline constexpr std::uint64_t kTrialsPerBlock = 64;

}  // namespace detail

/// Runs `model.trials` independent trials starting from `community`.
/// `threads == 0` uses every hardware thread; the result does not depend on it.
inline SurvivalReport simulate(const Community& community, const SurvivalModel& model, unsigned threads = 0) {
  model.validate();
  if (richness(community) < 1) throw Error(Errc::InvalidModel, "community has no living species");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const auto abundances = community.abundances();
  const auto initial = detail::largest_remainder(abundances, model.population_size);
  const std::size_t species = initial.size();

  const std::uint64_t blocks = (model.trials + detail::kTrialsPerBlock - 1) / detail::kTrialsPerBlock;
  // Blocks run in waves so memory stays bounded; each wave is merged in block
  // order, which fixes the floating-point summation order.
  const std::uint64_t wave = std::max<std::uint64_t>(64, 4 * static_cast<std::uint64_t>(threads));
  detail::Tally total(species, model.horizon);

  for (std::uint64_t first = 0; first < blocks; first += wave) {
    const std::uint64_t count = std::min(wave, blocks - first);
    std::vector<detail::Tally> tallies(count, detail::Tally(species, model.horizon));
    std::atomic<std::uint64_t> next{0};
    const auto work = [&] {
      for (std::uint64_t b = next++; b < count; b = next++) {
        const std::uint64_t begin = (first + b) * detail::kTrialsPerBlock;
        const std::uint64_t end = std::min(begin + detail::kTrialsPerBlock, model.trials);
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          detail::run_trial(initial, model, trial, tallies[b]);
        }
      }
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (const auto& t : tallies) total.merge(t);
  }

  const auto trials = static_cast<double>(model.trials);
  SurvivalReport report;
  report.trials_run = model.trials;
  report.seed = model.seed;
  report.per_species.reserve(species);
  for (std::size_t i = 0; i < species; ++i) {
    report.per_species.push_back({community.species()[i].label,
                                  static_cast<double>(total.extinctions[i]) / trials,
                                  static_cast<double>(total.extinction_time_sum[i]) / trials,
                                  model.trials - total.extinctions[i]});
  }
  report.survival_curve.reserve(model.horizon + 1);
  report.diversity_trajectory.reserve(model.horizon + 1);
  for (std::uint64_t t = 0; t <= model.horizon; ++t) {
    report.survival_curve.push_back({t, static_cast<double>(total.multi_species[t]) / trials});
    report.diversity_trajectory.push_back(total.diversity_sum[t] / trials);
  }
  return report;
}

struct SweepPoint {
  double initial_diversity = 1.0;  // Hill number of order 1
  double survival_probability = 0.0;
};

/// Simulates every community under the same model and seed, so differences
/// between entries come from the communities alone.
inline std::vector<SweepPoint> survival_vs_diversity_sweep(const std::vector<Community>& communities,
                                                           const SurvivalModel& model, unsigned threads = 0) {
  if (communities.empty()) throw Error(Errc::InvalidArgument, "sweep needs at least one community");
  model.validate();
  std::vector<SweepPoint> out;
  out.reserve(communities.size());
  for (const auto& c : communities) {
    out.push_back({hill_number(c, 1.0), simulate(c, model, threads).final_survival()});
  }
  return out;
}

}  // namespace ecodiv

#endif  // ECODIV_SURVIVAL_HPP
