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

#ifndef ECODIV_INDICES_HPP
#define ECODIV_INDICES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ecodiv/community.hpp"
#include "ecodiv/detail/power_mean.hpp"
#include "ecodiv/error.hpp"

/**
 * \file
 * \brief Classical diversity indices and their conversion to effective
 * numbers of species (Hill numbers).
 *
 * All logarithms are natural. Zero abundances contribute nothing to any sum
 * (0 ln 0 = 0) and are not counted as species.
 */

namespace ecodiv {

/// Orders closer than this to 1 use the Shannon limit.
inline constexpr double kShannonOrderTolerance = 1e-9;

inline bool is_shannon_order(double q) noexcept { return std::abs(q - 1.0) < kShannonOrderTolerance; }

inline void check_order(double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw Error(Errc::NegativeOrder, "order q must be a finite value >= 0, got " + std::to_string(q));
  }
}

inline std::size_t richness(const Community& c) noexcept {
  return static_cast<std::size_t>(std::count_if(c.species().begin(), c.species().end(),
                                                [](const Species& s) { return s.abundance > 0.0; }));
}

/// H = -sum p_i ln p_i, in nats.
inline double shannon_entropy(const Community& c) noexcept {
  double h = 0.0;
  for (const auto& s : c.species()) {
    if (s.abundance > 0.0) h -= s.abundance * std::log(s.abundance);
  }
  return h;
}

/// exp(H) written as the product of (1/p_i)^p_i over nonzero species.
inline double shannon_diversity_product(const Community& c) noexcept {
  double product = 1.0;
  for (const auto& s : c.species()) {
    if (s.abundance > 0.0) product *= std::pow(1.0 / s.abundance, s.abundance);
  }
  return product;
}

/// exp(H): the number of equally common species with the same entropy.
inline double shannon_diversity(const Community& c) noexcept {
  return std::exp(shannon_entropy(c));
}

/// Probability that two individuals drawn with replacement share a species.
inline double simpson_concentration(const Community& c) noexcept {
  double sum = 0.0;
  for (const auto& s : c.species()) sum += s.abundance * s.abundance;
  return sum;
}

inline double gini_simpson(const Community& c) noexcept { return 1.0 - simpson_concentration(c); }

namespace detail {

inline double power_sum(const Community& c, double q) noexcept {
  double sum = 0.0;
  for (const auto& s : c.species()) {
    if (s.abundance > 0.0) sum += std::pow(s.abundance, q);
  }
  return sum;
}

}  // namespace detail

/// Effective number of species of order q: (sum p_i^q)^(1/(1-q)), with the
/// exp(H) limit at q = 1. Always within [1, richness].
inline double hill_number(const Community& c, double q) {
  check_order(q);
  const auto s = static_cast<double>(richness(c));
  double d = 0.0;
  if (is_shannon_order(q)) {
    d = shannon_diversity(c);
  } else {
    // 1 / M_{q-1}(p; p), the reciprocal of the mean abundance.
    const auto p = c.abundances();
    d = std::exp(-detail::log_power_mean(p, p, q - 1.0));
  }
  return std::clamp(d, 1.0, s);
}

inline double renyi_entropy(const Community& c, double q) {
  check_order(q);
  if (is_shannon_order(q)) return shannon_entropy(c);
  return std::log(detail::power_sum(c, q)) / (1.0 - q);
}

/// HCDT (Tsallis) entropy of order q.
inline double tsallis_entropy(const Community& c, double q) {
  check_order(q);
  if (is_shannon_order(q)) return shannon_entropy(c);
  return (1.0 - detail::power_sum(c, q)) / (q - 1.0);
}

/// Which classical index a raw value came from.
struct IndexKind {
  enum class Family { richness, shannon, gini_simpson, simpson_concentration, renyi, tsallis };

  Family family = Family::shannon;
  double q = 1.0;  // only meaningful for renyi and tsallis

  static constexpr IndexKind richness() { return {Family::richness, 0.0}; }
  static constexpr IndexKind shannon() { return {Family::shannon, 1.0}; }
  static constexpr IndexKind gini_simpson() { return {Family::gini_simpson, 2.0}; }
  static constexpr IndexKind simpson_concentration() { return {Family::simpson_concentration, 2.0}; }
  static constexpr IndexKind renyi(double q) { return {Family::renyi, q}; }
  static constexpr IndexKind tsallis(double q) { return {Family::tsallis, q}; }

  /// The Hill order whose effective number this index converts to.
  [[nodiscard]] constexpr double hill_order() const noexcept { return q; }

  [[nodiscard]] std::string name() const {
    switch (family) {
      case Family::richness: return "richness";
      case Family::shannon: return "shannon";
      case Family::gini_simpson: return "gini_simpson";
      case Family::simpson_concentration: return "simpson_concentration";
      case Family::renyi: return "renyi(" + std::to_string(q) + ")";
      case Family::tsallis: return "tsallis(" + std::to_string(q) + ")";
    }
    return "unknown";
  }
};

/// Value of the index `kind` on community `c`.
inline double index_value(IndexKind kind, const Community& c) {
  using F = IndexKind::Family;
  switch (kind.family) {
    case F::richness: return static_cast<double>(richness(c));
    case F::shannon: return shannon_entropy(c);
    case F::gini_simpson: return gini_simpson(c);
    case F::simpson_concentration: return simpson_concentration(c);
    case F::renyi: return renyi_entropy(c, kind.q);
    case F::tsallis: return tsallis_entropy(c, kind.q);
  }
  return 0.0;
}

/// Converts a raw index value into an effective number of species.
inline double to_effective_number(IndexKind kind, double value) {
  using F = IndexKind::Family;
  const auto out_of_range = [&](const char* what) {
    return Error(Errc::ValueOutOfRange,
                 kind.name() + " value " + std::to_string(value) + " " + what);
  };
  if (!std::isfinite(value)) throw out_of_range("is not finite");
  switch (kind.family) {
    case F::richness:
      if (value < 1.0) throw out_of_range("must be >= 1");
      return value;
    case F::shannon:
      if (value < 0.0) throw out_of_range("must be >= 0");
      return std::exp(value);
    case F::gini_simpson:
      if (value < 0.0 || value >= 1.0) throw out_of_range("must lie in [0, 1)");
      return 1.0 / (1.0 - value);
    case F::simpson_concentration:
      if (value <= 0.0 || value > 1.0) throw out_of_range("must lie in (0, 1]");
      return 1.0 / value;
    case F::renyi:
      check_order(kind.q);
      if (value < 0.0) throw out_of_range("must be >= 0");
      return std::exp(value);
    case F::tsallis: {
      check_order(kind.q);
      if (value < 0.0) throw out_of_range("must be >= 0");
      if (is_shannon_order(kind.q)) return std::exp(value);
      const double base = 1.0 - (kind.q - 1.0) * value;
      if (base <= 0.0) throw out_of_range("is beyond the maximum for this order");
      return std::pow(base, 1.0 / (1.0 - kind.q));
    }
  }
  return value;
}

struct ProfilePoint {
  double q = 0.0;
  double effective_species = 1.0;
};

/// Hill numbers over a set of orders: the diversity spectrum of a community.
struct DiversityProfile {
  std::vector<ProfilePoint> points;
};

inline DiversityProfile diversity_profile(const Community& c, std::span<const double> orders) {
  if (orders.empty()) {
    throw Error(Errc::InvalidArgument, "diversity profile needs at least one order");
  }
  DiversityProfile profile;
  profile.points.reserve(orders.size());
  for (double q : orders) profile.points.push_back({q, hill_number(c, q)});
  return profile;
}

}  // namespace ecodiv

#endif  // ECODIV_INDICES_HPP
