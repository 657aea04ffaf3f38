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

#ifndef ECODIV_MONITOR_HPP
#define ECODIV_MONITOR_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "ecodiv/community.hpp"
#include "ecodiv/error.hpp"
#include "ecodiv/indices.hpp"

namespace ecodiv {

using Timestamp = std::chrono::sys_seconds;

/// "2013-06-01T00:00:00Z"
inline std::string format_timestamp(Timestamp t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

struct Snapshot {
  Timestamp timestamp;
  Community community;
};

/// Time-ordered snapshots of one ecosystem.
class EcosystemSeries {
 public:
  EcosystemSeries(std::string name, std::vector<Snapshot> snapshots)
      : name_(std::move(name)), snapshots_(std::move(snapshots)) {
    if (snapshots_.empty()) {
      throw Error(Errc::InvalidSeries, "series '" + name_ + "' has no snapshots");
    }
    for (std::size_t i = 1; i < snapshots_.size(); ++i) {
      if (snapshots_[i].timestamp <= snapshots_[i - 1].timestamp) {
        throw Error(Errc::InvalidSeries, "series '" + name_ + "' timestamps are not strictly increasing at " +
                                             format_timestamp(snapshots_[i].timestamp));
      }
    }
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }
  [[nodiscard]] std::size_t size() const noexcept { return snapshots_.size(); }

 private:
  std::string name_;
  std::vector<Snapshot> snapshots_;
};

struct SeriesPoint {
  Timestamp timestamp;
  double effective_species = 1.0;
};

inline std::vector<SeriesPoint> series_diversity(const EcosystemSeries& series, double q) {
  check_order(q);
  std::vector<SeriesPoint> out;
  out.reserve(series.size());
  for (const auto& snap : series.snapshots()) out.push_back({snap.timestamp, hill_number(snap.community, q)});
  return out;
}

/// Alarm when diversity of order q stays below `threshold` for
/// `min_consecutive` snapshots in a row.
struct AlarmPolicy {
  double q = 1.0;
  double threshold = 1.0;
  std::size_t min_consecutive = 1;

  void validate() const {
    check_order(q);
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
      throw Error(Errc::InvalidPolicy, "alarm threshold must be a positive number");
    }
    if (min_consecutive < 1) throw Error(Errc::InvalidPolicy, "min_consecutive must be at least 1");
  }
};

struct Alarm {
  Timestamp timestamp;
  std::size_t snapshot_index = 0;
  double observed = 0.0;
  double threshold = 0.0;
  AlarmPolicy policy;
};

inline std::vector<Alarm> evaluate(const std::vector<SeriesPoint>& points, const AlarmPolicy& policy) {
  policy.validate();
  std::vector<Alarm> alarms;
  std::size_t run = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].effective_species < policy.threshold) {
      if (++run >= policy.min_consecutive) {
        alarms.push_back({points[i].timestamp, i, points[i].effective_species, policy.threshold, policy});
      }
    } else {
      run = 0;
    }
  }
  return alarms;
}

inline std::vector<Alarm> evaluate(const EcosystemSeries& series, const AlarmPolicy& policy) {
  policy.validate();
  return evaluate(series_diversity(series, policy.q), policy);
}

/// Least-squares slope of diversity against time, in effective species per day.
inline double trend(const std::vector<SeriesPoint>& points) {
  if (points.size() < 2) {
    throw Error(Errc::TooFewSnapshots, "trend needs at least two snapshots");
  }
  const auto origin = points.front().timestamp;
  const auto days = [&](Timestamp t) {
    return std::chrono::duration<double, std::ratio<86400>>(t - origin).count();
  };
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += days(p.timestamp);
    mean_y += p.effective_species;
  }
  const auto n = static_cast<double>(points.size());
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& p : points) {
    const double dx = days(p.timestamp) - mean_x;
    sxy += dx * (p.effective_species - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

inline double trend(const EcosystemSeries& series, double q) { return trend(series_diversity(series, q)); }

}  // namespace ecodiv

#endif  // ECODIV_MONITOR_HPP
