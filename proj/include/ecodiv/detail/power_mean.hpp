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

#ifndef ECODIV_DETAIL_POWER_MEAN_HPP
#define ECODIV_DETAIL_POWER_MEAN_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace ecodiv::detail {

/// Weighted power mean M_t(w, x) = (sum w_i x_i^t / sum w_i)^(1/t), with the
/// geometric mean at t == 0. Entries with w_i == 0 are skipped; all remaining
/// x_i must be positive.
///
/// Evaluated in log space around the dominant term, with expm1/log1p so that
/// |t| close to zero does not cancel.
inline double log_power_mean(std::span<const double> weights, std::span<const double> values,
                             double t) {
  assert(weights.size() == values.size());
  double total_weight = 0.0;
  for (double w : weights) total_weight += w;

  if (t == 0.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) acc += weights[i] * std::log(values[i]);
    }
    return acc / total_weight;
  }

  // Pivot on the term that dominates x^t: the largest x for t > 0, the
  // smallest for t < 0.
  double pivot = t > 0.0 ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    const double lx = std::log(values[i]);
    pivot = t > 0.0 ? std::max(pivot, lx) : std::min(pivot, lx);
  }
  double excess = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    excess += weights[i] * std::expm1(t * (std::log(values[i]) - pivot));
  }
  return pivot + std::log1p(excess / total_weight) / t;
}

inline double power_mean(std::span<const double> weights, std::span<const double> values,
                         double t) {
  return std::exp(log_power_mean(weights, values, t));
}

}  // namespace ecodiv::detail

#endif  // ECODIV_DETAIL_POWER_MEAN_HPP
