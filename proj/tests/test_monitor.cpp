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

#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "ecodiv/monitor.hpp"
#include "test_support.hpp"

namespace ecodiv {
namespace {

using namespace std::chrono_literals;

const Timestamp kStart = std::chrono::sys_days{std::chrono::year{2013} / 6 / 1};

std::vector<SeriesPoint> points(const std::vector<double>& values, std::chrono::seconds spacing = 24h) {
  std::vector<SeriesPoint> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({kStart + spacing * static_cast<long>(i), values[i]});
  }
  return out;
}

TEST(FormatTimestamp, Iso8601) {
  EXPECT_EQ(format_timestamp(kStart), "2013-06-01T00:00:00Z");
  EXPECT_EQ(format_timestamp(kStart + 13h + 5min + 9s), "2013-06-01T13:05:09Z");
}

TEST(EcosystemSeries, Invariants) {
  EXPECT_THROW(EcosystemSeries("empty", {}), Error);
  const auto a = testing::community_a();
  EXPECT_THROW(EcosystemSeries("dup", {{kStart, a}, {kStart, a}}), Error);
  EXPECT_THROW(EcosystemSeries("backwards", {{kStart + 1h, a}, {kStart, a}}), Error);
  EXPECT_NO_THROW(EcosystemSeries("ok", {{kStart, a}, {kStart + 1s, a}}));
}

TEST(SeriesDiversity, Examples) {
  const auto a = testing::community_a();
  const auto b = testing::community_b();
  const auto one = series_diversity(EcosystemSeries("a", {{kStart, a}}), 1.0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0].effective_species, 4.0, 1e-12);
  EXPECT_EQ(one[0].timestamp, kStart);

  const auto twin = series_diversity(EcosystemSeries("aa", {{kStart, a}, {kStart + 24h, a}}), 1.0);
  EXPECT_EQ(twin[0].effective_species, twin[1].effective_species);

  const auto ab = series_diversity(EcosystemSeries("ab", {{kStart, a}, {kStart + 24h, b}}), 1.0);
  EXPECT_NEAR(ab[0].effective_species, 4.0, 1e-12);
  EXPECT_NEAR(ab[1].effective_species, testing::kDiversityB, 1e-12);

  EXPECT_THROW(series_diversity(EcosystemSeries("a", {{kStart, a}}), -1.0), Error);
}

TEST(Evaluate, SingleViolation) {
  const auto alarms = evaluate(points({1.5, 1.4, 1.3}), AlarmPolicy{1.0, 1.35, 1});
  ASSERT_EQ(alarms.size(), 1u);
  EXPECT_EQ(alarms[0].snapshot_index, 2u);
  EXPECT_EQ(alarms[0].observed, 1.3);
  EXPECT_EQ(alarms[0].threshold, 1.35);
  EXPECT_EQ(alarms[0].timestamp, kStart + 48h);
}

TEST(Evaluate, AllAboveThreshold) {
  EXPECT_TRUE(evaluate(points({2.0, 3.0, 2.5}), AlarmPolicy{1.0, 1.5, 1}).empty());
  // Equal to the threshold is not below it.
  EXPECT_TRUE(evaluate(points({1.5}), AlarmPolicy{1.0, 1.5, 1}).empty());
}

TEST(Evaluate, DebouncedRunResets) {
  // Counting by hand: 1.2 (run 1), 1.2 (run 2, alarm), 1.5 (reset), 1.2 (run 1).
  const auto alarms = evaluate(points({1.2, 1.2, 1.5, 1.2}), AlarmPolicy{1.0, 1.3, 2});
  ASSERT_EQ(alarms.size(), 1u);
  EXPECT_EQ(alarms[0].snapshot_index, 1u);
}

TEST(Evaluate, EverySnapshotOfALongRunAlarms) {
  const auto alarms = evaluate(points({1.0, 1.0, 1.0, 1.0, 2.0}), AlarmPolicy{1.0, 1.3, 2});
  ASSERT_EQ(alarms.size(), 3u);
  EXPECT_EQ(alarms[0].snapshot_index, 1u);
  EXPECT_EQ(alarms[2].snapshot_index, 3u);
}

TEST(Evaluate, PolicyValidation) {
  EXPECT_THROW(evaluate(points({1.0}), AlarmPolicy{1.0, 0.0, 1}), Error);
  EXPECT_THROW(evaluate(points({1.0}), AlarmPolicy{1.0, 1.0, 0}), Error);
  EXPECT_THROW(evaluate(points({1.0}), AlarmPolicy{-1.0, 1.0, 1}), Error);
}

TEST(Evaluate, AlarmProperties) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> value(1.0, 3.0);
  std::uniform_int_distribution<std::size_t> length(1, 30);
  std::uniform_int_distribution<std::size_t> debounce(1, 4);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> values(length(rng));
    for (auto& v : values) v = value(rng);
    const AlarmPolicy policy{1.0, value(rng), debounce(rng)};
    const auto alarms = evaluate(points(values), policy);
    EXPECT_LE(alarms.size(), values.size());
    for (const auto& a : alarms) EXPECT_LT(a.observed, policy.threshold);
  }
}

TEST(Evaluate, FromSeries) {
  const auto series = EcosystemSeries("ab", {{kStart, testing::community_a()}, {kStart + 24h, testing::community_b()}});
  const auto alarms = evaluate(series, AlarmPolicy{1.0, 2.0, 1});
  ASSERT_EQ(alarms.size(), 1u);
  EXPECT_NEAR(alarms[0].observed, testing::kDiversityB, 1e-12);
}

TEST(Trend, Examples) {
  EXPECT_EQ(trend(points({2.0, 2.0})), 0.0);
  EXPECT_NEAR(trend(points({2.0, 3.0})), 1.0, 1e-12);
  // Collinear, irregular spacing: y = 1.5 + 0.25 * days.
  const std::vector<SeriesPoint> line{{kStart, 1.5}, {kStart + 48h, 2.0}, {kStart + 24h * 7, 3.25}};
  EXPECT_NEAR(trend(line), 0.25, 1e-9);
  EXPECT_THROW(trend(points({2.0})), Error);
  try {
    trend(points({2.0}));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooFewSnapshots);
  }
}

TEST(Trend, InvariantUnderTimeTranslation) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> value(1.0, 5.0);
  std::uniform_int_distribution<long> gap(1, 400);
  for (int i = 0; i < 100; ++i) {
    std::vector<SeriesPoint> base;
    Timestamp t = kStart;
    for (int k = 0; k < 6; ++k) {
      t += std::chrono::hours{gap(rng)};
      base.push_back({t, value(rng)});
    }
    auto shifted = base;
    for (auto& p : shifted) p.timestamp += std::chrono::hours{24 * 365 * 3 + 7};
    EXPECT_NEAR(trend(shifted), trend(base), 1e-9);
  }
}

}  // namespace
}  // namespace ecodiv
