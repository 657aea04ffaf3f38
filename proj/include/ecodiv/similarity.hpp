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

#ifndef ECODIV_SIMILARITY_HPP
#define ECODIV_SIMILARITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecodiv/community.hpp"
#include "ecodiv/detail/power_mean.hpp"
#include "ecodiv/error.hpp"
#include "ecodiv/indices.hpp"

/**
 * \file
 * \brief Similarity-sensitive diversity.
 *
 * Species that share code are partly the same species from an attacker's
 * point of view. Given pairwise similarities z_ij in [0, 1], each species has
 * an ordinariness a_i = sum_j z_ij p_j, the abundance of everything that looks
 * like it. The diversity of order q is the reciprocal of the power mean of
 * order q - 1 of the a_i, weighted by p_i (Leinster & Cobbold 2012). With
 * z = I this is exactly the Hill number.
 */

namespace ecodiv {

/// Symmetric species-by-species similarity with unit diagonal.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<std::string> labels, std::vector<double> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    const std::size_t n = labels_.size();
    if (values_.size() != n * n) {
      throw Error(Errc::InvalidArgument, "similarity matrix must be square over its labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (labels_[i].empty()) throw Error(Errc::EmptyLabel, "similarity label must be non-empty");
      if (!index_.emplace(labels_[i], i).second) {
        throw Error(Errc::DuplicateLabel, "duplicate similarity label '" + labels_[i] + "'");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i, i) != 1.0) {
        throw Error(Errc::ValueOutOfRange, "diagonal entry for '" + labels_[i] + "' must be 1");
      }
      for (std::size_t j = 0; j < n; ++j) {
        const double z = at(i, j);
        if (!(z >= 0.0 && z <= 1.0)) {
          throw Error(Errc::ValueOutOfRange, "similarity of '" + labels_[i] + "' and '" + labels_[j] +
                                                 "' must lie in [0, 1], got " + std::to_string(z));
        }
        if (z != at(j, i)) {
          throw Error(Errc::ValueOutOfRange,
                      "similarity of '" + labels_[i] + "' and '" + labels_[j] + "' is not symmetric");
        }
      }
    }
  }

  static SimilarityMatrix identity(std::vector<std::string> labels) {
    const std::size_t n = labels.size();
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 1.0;
    return {std::move(labels), std::move(values)};
  }

  static SimilarityMatrix ones(std::vector<std::string> labels) {
    const std::size_t n = labels.size();
    return {std::move(labels), std::vector<double>(n * n, 1.0)};
  }

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const noexcept { return values_[i * labels_.size() + j]; }

  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const noexcept {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
  std::map<std::string, std::size_t> index_;
};

struct LinesOfCode {
  std::string label;
  std::uint64_t total_lines = 0;
};

struct SharedCode {
  std::string label_a;
  std::string label_b;
  std::uint64_t shared_lines = 0;
};

/// z_ij = shared(i, j) / min(total(i), total(j)). Pairs never mentioned are
/// taken to be unrelated.
inline SimilarityMatrix similarity_from_shared_code(const std::vector<LinesOfCode>& loc,
                                                    const std::vector<SharedCode>& shared) {
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  for (const auto& entry : loc) {
    if (entry.total_lines == 0) {
      throw Error(Errc::ValueOutOfRange, "species '" + entry.label + "' must have a positive line count");
    }
    if (!index.emplace(entry.label, labels.size()).second) {
      throw Error(Errc::DuplicateLabel, "duplicate species '" + entry.label + "' in line counts");
    }
    labels.push_back(entry.label);
  }
  const std::size_t n = labels.size();
  std::vector<double> values(n * n, 0.0);
  std::vector<std::optional<std::uint64_t>> seen(n * n);
  for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 1.0;

  for (const auto& pair : shared) {
    auto ia = index.find(pair.label_a);
    auto ib = index.find(pair.label_b);
    if (ia == index.end() || ib == index.end()) {
      const auto& name = ia == index.end() ? pair.label_a : pair.label_b;
      throw Error(Errc::UnknownLabel, "shared-code entry names unknown species '" + name + "'");
    }
    const std::size_t i = ia->second;
    const std::size_t j = ib->second;
    if (i == j) continue;
    const std::uint64_t smaller = std::min(loc[i].total_lines, loc[j].total_lines);
    if (pair.shared_lines > smaller) {
      throw Error(Errc::SharedExceedsTotal, "'" + pair.label_a + "' and '" + pair.label_b + "' share " +
                                                std::to_string(pair.shared_lines) + " lines but the smaller has only " +
                                                std::to_string(smaller));
    }
    if (seen[i * n + j] && *seen[i * n + j] != pair.shared_lines) {
      throw Error(Errc::ConflictingPair,
                  "conflicting shared-code entries for '" + pair.label_a + "' and '" + pair.label_b + "'");
    }
    seen[i * n + j] = seen[j * n + i] = pair.shared_lines;
    const double z = static_cast<double>(pair.shared_lines) / static_cast<double>(smaller);
    values[i * n + j] = values[j * n + i] = z;
  }
  return {std::move(labels), std::move(values)};
}

/// Similarity-sensitive effective number of species of order q. Lies in
/// [1, hill_number(c, q)].
inline double similarity_diversity(const Community& c, const SimilarityMatrix& z, double q) {
  check_order(q);
  std::vector<double> weights;
  std::vector<std::size_t> rows;
  std::vector<std::string> missing;
  for (const auto& s : c.species()) {
    if (s.abundance <= 0.0) continue;
    auto row = z.index_of(s.label);
    if (!row) {
      missing.push_back(s.label);
      continue;
    }
    weights.push_back(s.abundance);
    rows.push_back(*row);
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
    throw Error(Errc::MissingSpecies, "similarity matrix lacks: " + names);
  }

  double total = 0.0;
  for (double w : weights) total += w;

  // Ordinariness relative to the total mass, so identical rows give exactly 1.
  std::vector<double> ordinariness(weights.size(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double a = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) a += z.at(rows[i], rows[j]) * weights[j];
    ordinariness[i] = a / total;
  }

  const double t = is_shannon_order(q) ? 0.0 : q - 1.0;
  const double d = std::exp(-detail::log_power_mean(weights, ordinariness, t));
  return std::max(d, 1.0);
}

}  // namespace ecodiv

#endif  // ECODIV_SIMILARITY_HPP
