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

#ifndef ECODIV_GRANULARITY_HPP
#define ECODIV_GRANULARITY_HPP

#include <algorithm>
#include <string>

#include "ecodiv/community.hpp"
#include "ecodiv/indices.hpp"

namespace ecodiv {

/// True diversity bracketed by a coarse and a fine classification of the
/// same population.
struct DiversityInterval {
  double lower = 1.0;  // coarse classification
  double upper = 1.0;  // fine classification
  double q = 1.0;
  std::string taxonomy_name;

  [[nodiscard]] double width() const noexcept { return upper - lower; }
};

inline DiversityInterval diversity_interval(const Community& fine, const Taxonomy& taxonomy, double q) {
  check_order(q);
  const Community coarse = aggregate(fine, taxonomy);
  DiversityInterval interval{hill_number(coarse, q), hill_number(fine, q), q, taxonomy.name()};
  // Merging species cannot raise diversity; only rounding can invert the pair.
  interval.lower = std::min(interval.lower, interval.upper);
  return interval;
}

}  // namespace ecodiv

#endif  // ECODIV_GRANULARITY_HPP
