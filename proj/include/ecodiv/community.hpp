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

#ifndef ECODIV_COMMUNITY_HPP
#define ECODIV_COMMUNITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ecodiv/error.hpp"

/**
 * \file
 * \brief Species-abundance distributions and fine-to-coarse taxonomies.
 */

namespace ecodiv {

/// How the raw weights of a community table are expressed.
enum class Unit { proportion, percent, count };

constexpr std::string_view to_string(Unit unit) noexcept {
  switch (unit) {
    case Unit::proportion: return "proportion";
    case Unit::percent: return "percent";
    case Unit::count: return "count";
  }
  return "proportion";
}

inline std::optional<Unit> parse_unit(std::string_view text) noexcept {
  if (text == "proportion") return Unit::proportion;
  if (text == "percent") return Unit::percent;
  if (text == "count") return Unit::count;
  return std::nullopt;
}

/// Raw weights for proportion and percent tables may deviate from their
/// nominal total by this much (absolute, in the table's own unit scaled to 1).
inline constexpr double kRawSumTolerance = 0.01;

struct Species {
  std::string label;
  double abundance = 0.0;

  friend bool operator==(const Species&, const Species&) = default;
};

struct WeightedLabel {
  std::string label;
  double weight = 0.0;
};

class Community;

Community make_community(std::string name, std::span<const WeightedLabel> entries, Unit unit);
Community drop_zeros(const Community& community);
Community split_all(const Community& community, std::size_t parts);

/// A named set of species with relative abundances summing to one.
///
/// Only obtainable through make_community() and the transformations in this
/// header, so every instance is validated and normalized.
class Community {
 public:
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::span<const Species> species() const noexcept { return species_; }
  [[nodiscard]] std::size_t size() const noexcept { return species_.size(); }

  /// Sum of the weights as given, before renormalization.
  [[nodiscard]] double raw_total() const noexcept { return raw_total_; }
  [[nodiscard]] Unit unit() const noexcept { return unit_; }

  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const noexcept {
    for (std::size_t i = 0; i < species_.size(); ++i) {
      if (species_[i].label == label) return i;
    }
    return std::nullopt;
  }

  /// Abundances in species order.
  [[nodiscard]] std::vector<double> abundances() const {
    std::vector<double> out;
    out.reserve(species_.size());
    for (const auto& s : species_) out.push_back(s.abundance);
    return out;
  }

  friend bool operator==(const Community& a, const Community& b) {
    return a.name_ == b.name_ && a.species_ == b.species_;
  }

 private:
  Community(std::string name, std::vector<Species> species, double raw_total, Unit unit)
      : name_(std::move(name)), species_(std::move(species)), raw_total_(raw_total), unit_(unit) {}

  friend Community make_community(std::string, std::span<const WeightedLabel>, Unit);
  friend Community drop_zeros(const Community&);
  friend Community split_all(const Community&, std::size_t);

  std::string name_;
  std::vector<Species> species_;
  double raw_total_ = 1.0;
  Unit unit_ = Unit::proportion;
};

/// Validates raw weights and normalizes them by their sum.
///
/// Proportion and percent tables must already sum to 1 (resp. 100) within
/// 1%; anything further off is treated as corrupt data rather than rounding.
inline Community make_community(std::string name, std::span<const WeightedLabel> entries,
                                Unit unit) {
  if (entries.empty()) {
    throw Error(Errc::AllZero, "community '" + name + "' has no species");
  }
  std::unordered_set<std::string_view> seen;
  double total = 0.0;
  for (const auto& e : entries) {
    if (e.label.empty()) {
      throw Error(Errc::EmptyLabel, "species label must be non-empty");
    }
    if (!seen.insert(e.label).second) {
      throw Error(Errc::DuplicateLabel, "duplicate species '" + e.label + "'");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw Error(Errc::NegativeWeight,
                  "species '" + e.label + "' has invalid weight " + std::to_string(e.weight));
    }
    total += e.weight;
  }
  if (total <= 0.0) {
    throw Error(Errc::AllZero, "all weights of community '" + name + "' are zero");
  }
  const double scale = unit == Unit::percent ? 100.0 : 1.0;
  if (unit != Unit::count && std::abs(total / scale - 1.0) > kRawSumTolerance + 1e-12) {
    throw Error(Errc::SumOutOfTolerance,
                "weights of community '" + name + "' sum to " + std::to_string(total) +
                    ", expected " + std::to_string(scale) + " within 1%");
  }
  std::vector<Species> species;
  species.reserve(entries.size());
  for (const auto& e : entries) {
    species.push_back({e.label, e.weight / total});
  }
  return Community(std::move(name), std::move(species), total, unit);
}

inline Community make_community(std::string name, std::initializer_list<WeightedLabel> entries,
                                Unit unit) {
  return make_community(std::move(name), std::span<const WeightedLabel>(entries.begin(), entries.size()),
                        unit);
}

/// Builds a community from bare abundances labelled "1", "2", ...
inline Community make_community(std::string name, const std::vector<double>& weights, Unit unit) {
  std::vector<WeightedLabel> entries;
  entries.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    entries.push_back({std::to_string(i + 1), weights[i]});
  }
  return make_community(std::move(name), entries, unit);
}

inline Community drop_zeros(const Community& community) {
  std::vector<Species> kept;
  for (const auto& s : community.species()) {
    if (s.abundance > 0.0) kept.push_back(s);
  }
  return Community(community.name(), std::move(kept), community.raw_total(), community.unit());
}

/// Replaces every species by `parts` equal sub-species labelled
/// "<label>#1" ... "<label>#parts".
inline Community split_all(const Community& community, std::size_t parts) {
  if (parts < 1) {
    throw Error(Errc::InvalidArgument, "split factor must be at least 1");
  }
  if (parts == 1) return community;
  std::vector<Species> out;
  out.reserve(community.size() * parts);
  const double k = static_cast<double>(parts);
  for (const auto& s : community.species()) {
    for (std::size_t j = 1; j <= parts; ++j) {
      out.push_back({s.label + "#" + std::to_string(j), s.abundance / k});
    }
  }
  return Community(community.name(), std::move(out), community.raw_total(), community.unit());
}

/// A single-level mapping from fine species labels to coarse groups.
class Taxonomy {
 public:
  Taxonomy(std::string name, std::map<std::string, std::string> groups)
      : name_(std::move(name)), groups_(std::move(groups)) {
    if (groups_.empty()) {
      throw Error(Errc::InvalidArgument, "taxonomy '" + name_ + "' maps no labels");
    }
    for (const auto& [fine, coarse] : groups_) {
      if (fine.empty() || coarse.empty()) {
        throw Error(Errc::EmptyLabel, "taxonomy '" + name_ + "' contains an empty label");
      }
    }
  }

  /// Each label is its own group.
  static Taxonomy identity(const Community& community) {
    std::map<std::string, std::string> groups;
    for (const auto& s : community.species()) groups.emplace(s.label, s.label);
    return Taxonomy("identity", std::move(groups));
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::map<std::string, std::string>& groups() const noexcept { return groups_; }

  [[nodiscard]] const std::string* group_of(const std::string& fine) const noexcept {
    auto it = groups_.find(fine);
    return it == groups_.end() ? nullptr : &it->second;
  }

 private:
  std::string name_;
  std::map<std::string, std::string> groups_;
};

/// Labels of `community` that `taxonomy` does not map, in species order.
inline std::vector<std::string> unmapped_labels(const Community& community, const Taxonomy& taxonomy) {
  std::vector<std::string> missing;
  for (const auto& s : community.species()) {
    if (taxonomy.group_of(s.label) == nullptr) missing.push_back(s.label);
  }
  return missing;
}

/// Sums fine abundances into their coarse groups. Groups appear in order of
/// their first member.
inline Community aggregate(const Community& community, const Taxonomy& taxonomy) {
  if (auto missing = unmapped_labels(community, taxonomy); !missing.empty()) {
    std::string names;
    for (const auto& m : missing) {
      if (!names.empty()) names += ", ";
      names += m;
    }
    throw Error(Errc::UnmappedLabel, "taxonomy '" + taxonomy.name() + "' does not map: " + names);
  }
  std::vector<WeightedLabel> groups;
  for (const auto& s : community.species()) {
    const std::string& coarse = *taxonomy.group_of(s.label);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const WeightedLabel& g) { return g.label == coarse; });
    if (it == groups.end()) {
      groups.push_back({coarse, s.abundance});
    } else {
      it->weight += s.abundance;
    }
  }
  return make_community(community.name(), groups, Unit::proportion);
}

struct CountEntry {
  std::string label;
  std::uint64_t count = 0;
};

/// Integer tallies, e.g. machines per operating system.
struct CountTable {
  std::vector<CountEntry> entries;

  [[nodiscard]] std::uint64_t total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& e : entries) sum += e.count;
    return sum;
  }

  [[nodiscard]] Community to_community(std::string name) const {
    std::vector<WeightedLabel> weights;
    weights.reserve(entries.size());
    for (const auto& e : entries) weights.push_back({e.label, static_cast<double>(e.count)});
    return make_community(std::move(name), weights, Unit::count);
  }
};

}  // namespace ecodiv

#endif  // ECODIV_COMMUNITY_HPP
