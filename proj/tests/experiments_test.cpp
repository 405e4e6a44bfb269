// Copyright 2026 The Rankbench Authors.
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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "rankbench.hpp"

namespace rankbench::experiments {
namespace {

TEST(IsotonicTest, PoolsViolators) {
  const std::vector<double> y = {1, 3, 2, 4};
  EXPECT_EQ(IsotonicFit(y, true), (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(IsotonicFit(y, false), (std::vector<double>{2.5, 2.5, 2.5, 2.5}));
  EXPECT_DOUBLE_EQ(TrendResidualRms(std::vector<double>{1, 2, 3}, true), 0.0);
  EXPECT_DOUBLE_EQ(TrendResidualRms(std::vector<double>{1, 0}, true), 0.5);
}

TEST(PopulationTest, GeometricStrengths) {
  const Population pop = GeometricPopulation(3, 4.0);
  EXPECT_EQ(pop.models, (std::vector<std::string>{"q1", "q2", "q3"}));
  EXPECT_DOUBLE_EQ(pop.strengths[0], 1.0);
  EXPECT_DOUBLE_EQ(pop.strengths[1], 2.0);
  EXPECT_DOUBLE_EQ(pop.strengths[2], 4.0);
}

TEST(BinaryResponseTest, GlobalMetricsSitNearOneHalf) {
  BinaryResponseOptions options;
  options.trials = 20;
  const BinaryResponseResult result = RunBinaryResponse(options);
  ASSERT_EQ(result.trials.size(), 20u);
  for (const auto& [name, value] : result.Summarize()) {
    if (name.starts_with("mean_accuracy") || name.starts_with("mean_roc_auc") ||
        name.starts_with("mean_f1")) {
      EXPECT_GE(value, 0.48) << name;
      EXPECT_LE(value, 0.52) << name;
    }
  }
  for (const auto& tr : result.trials) {
    for (size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(tr.accuracy[k], 0.5, 0.06);
      EXPECT_NEAR(tr.roc_auc[k], 0.5, 0.06);
      EXPECT_NEAR(tr.f1[k], 0.5, 0.06);
    }
  }
  const Table t = result.ToTable();
  EXPECT_EQ(t.rows.size(), 60u);
}

TEST(BinaryResponseTest, ThreadInvariant) {
  BinaryResponseOptions options;
  options.trials = 12;
  std::ostringstream a, b;
  WriteCsv(a, RunBinaryResponse(options).ToTable());
  options.threads = 4;
  WriteCsv(b, RunBinaryResponse(options).ToTable());
  EXPECT_EQ(a.str(), b.str());
}

TEST(TieCurveTest, EndpointsAndDeterminism) {
  TieCurveOptions options;
  options.steps = 4;
  options.trials = 40;
  const auto curve = RunTieCurve(options);
  ASSERT_EQ(curve.size(), 5u);
  EXPECT_DOUBLE_EQ(curve[2].q, 0.5);
  EXPECT_GE(curve[0].mean_spearman, 0.9);
  EXPECT_EQ(curve[4].mean_spearman, 0.0);
  options.threads = 3;
  const auto again = RunTieCurve(options);
  for (size_t i = 0; i < curve.size(); ++i) {
    EXPECT_EQ(again[i].mean_spearman, curve[i].mean_spearman);
    EXPECT_EQ(again[i].sd_spearman, curve[i].sd_spearman);
  }
}

TEST(StabilityTest, BudgetIsOnTheCurve) {
  StabilityOptions options;
  options.trials = 5;
  options.k_max = 300;
  options.k_step = 50;
  options.reference_per_pair = 5000;
  const StabilityResult result = RunStability(options);
  EXPECT_EQ(result.budget, 238);
  EXPECT_NO_THROW(result.DistanceAt(238));
  EXPECT_EQ(result.curve.front().k, 10);
  for (size_t i = 1; i < result.curve.size(); ++i) {
    EXPECT_LT(result.curve[i - 1].k, result.curve[i].k);
  }
}

TEST(StabilityTest, FullDataGivesZeroDistance) {
  // Source log with 30 comparisons per pair: the reference falls back to
  // all data, and k above 30 keeps every record.
  Rng rng(4);
  const ComparisonLog source =
      SimulateComparisons(GeometricPopulation(4, 2.0), 30, rng);
  StabilityOptions options;
  options.trials = 3;
  options.k_min = 40;
  options.k_max = 40;
  options.include_budget = false;
  const StabilityResult result = RunStability(options, &source);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_EQ(result.DistanceAt(40), 0.0);
}

TEST(MagnitudeTest, GridIsAscendingAndClosed) {
  const std::vector<double> grid = MagnitudeGrid({});
  ASSERT_EQ(grid.size(), 100u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_NEAR(grid.back(), 0.1, 1e-12);
  for (size_t i = 1; i < grid.size(); ++i) EXPECT_GT(grid[i], grid[i - 1]);
}

TEST(MagnitudeTest, SmallRunIsDeterministic) {
  MagnitudeOptions options;
  options.steps = 5;
  options.trials = 50;
  const auto a = RunMagnitude(options);
  options.threads = 2;
  const auto b = RunMagnitude(options);
  ASSERT_EQ(a.size(), 5u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].p_correct, b[i].p_correct);
    EXPECT_EQ(a[i].delta, b[i].delta);
  }
  EXPECT_GT(a.back().p_correct, a.front().p_correct);
}

}  // namespace
}  // namespace rankbench::experiments
