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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "rankbench.hpp"
#include "test_util.hpp"

namespace rankbench {
namespace {

using testing::BinaryPreds;
using testing::LabelTruth;

const DatasetKind kBinary = DatasetKind::Binary();
const JudgeRule kCloser = JudgeRule::CloserDecisionValue();

Outcome Flip(Outcome o) {
  if (o == Outcome::kLeft) return Outcome::kRight;
  if (o == Outcome::kRight) return Outcome::kLeft;
  return o;
}

TEST(JudgeTest, CloserToTruthWins) {
  EXPECT_EQ(Judge(kCloser, Scores{{0.9}}, Scores{{0.6}}, 1, kBinary),
            Outcome::kLeft);
  EXPECT_EQ(Judge(kCloser, Scores{{0.9}}, Scores{{0.6}}, 0, kBinary),
            Outcome::kRight);
  EXPECT_EQ(Judge(kCloser, Scores{{0.4}}, Scores{{0.4}}, 1, kBinary),
            Outcome::kTie);
}

TEST(JudgeTest, MultiClassUsesTrueClassConfidence) {
  const DatasetKind kind = DatasetKind::MultiClass(3);
  EXPECT_EQ(Judge(kCloser, Scores{{0.2, 0.5, 0.3}}, Scores{{0.6, 0.1, 0.3}}, 2,
                  kind),
            Outcome::kTie);
  EXPECT_EQ(Judge(kCloser, Scores{{0.2, 0.5, 0.3}}, Label{1}, 1, kind),
            Outcome::kRight);
}

TEST(JudgeTest, TieTolerance) {
  const JudgeRule loose = JudgeRule::CloserDecisionValue(0.1);
  EXPECT_EQ(Judge(loose, Scores{{0.9}}, Scores{{0.85}}, 1, kBinary),
            Outcome::kTie);
  EXPECT_EQ(Judge(loose, Scores{{0.9}}, Scores{{0.7}}, 1, kBinary),
            Outcome::kLeft);
  EXPECT_THROW(JudgeRule::TextMetric(Metric::kAccuracy), ValidationError);
  EXPECT_THROW(Judge(JudgeRule::CloserDecisionValue(-1), Scores{{0.9}},
                     Scores{{0.7}}, 1, kBinary),
               ValidationError);
}

TEST(JudgeTest, TextRules) {
  const DatasetKind text = DatasetKind::Text();
  const std::string ref = "the quick brown fox";
  for (Metric m : {Metric::kChrF, Metric::kEditDistance,
                   Metric::kWordErrorRate}) {
    EXPECT_EQ(Judge(JudgeRule::TextMetric(m), ref, std::string("zzz qq"), ref,
                    text),
              Outcome::kLeft)
        << Info(m).name;
  }
  EXPECT_THROW(Judge(kCloser, std::string("a"), std::string("b"),
                     std::string("a"), text),
               ValidationError);
}

TEST(JudgeTest, AntisymmetricAndNeverFavorsTheFarther) {
  Rng rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = rng.Below(11) / 10.0;
    const double b = rng.Below(11) / 10.0;
    const int y = static_cast<int>(rng.Below(2));
    const JudgeRule rule = JudgeRule::CloserDecisionValue(rng.Below(3) / 10.0);
    const Outcome ab = Judge(rule, Scores{{a}}, Scores{{b}}, y, kBinary);
    EXPECT_EQ(Judge(rule, Scores{{b}}, Scores{{a}}, y, kBinary), Flip(ab));
    const double da = std::abs(y - a);
    const double db = std::abs(y - b);
    if (da > db) EXPECT_NE(ab, Outcome::kLeft);
    if (db > da) EXPECT_NE(ab, Outcome::kRight);
  }
}

TEST(JudgeTest, ContinuousScoresAlmostNeverTie) {
  Rng rng(8);
  int ties = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    ties += Judge(kCloser, Scores{{rng.Uniform()}}, Scores{{rng.Uniform()}}, 1,
                  kBinary) == Outcome::kTie;
  }
  EXPECT_LT(ties, draws / 1000);
}

TEST(GenerateComparisonsTest, OnePairPerExample) {
  const GroundTruth truth = LabelTruth(kBinary, {1, 0, 1});
  const std::vector<PredictionSet> models = {
      BinaryPreds("b", {0.9, 0.9, 0.5}), BinaryPreds("a", {0.8, 0.1, 0.5})};
  const ComparisonLog log = GenerateComparisons(models, truth, kCloser);
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log.At(0), (Comparison{"a", "b", Outcome::kRight, "e1"}));
  EXPECT_EQ(log.At(1), (Comparison{"a", "b", Outcome::kLeft, "e2"}));
  EXPECT_EQ(log.At(2), (Comparison{"a", "b", Outcome::kTie, "e3"}));
}

TEST(GenerateComparisonsTest, CountMatchesCountPairs) {
  const SyntheticSet set = RandomBinaryModels(5, 40, 3);
  const ComparisonLog log = GenerateComparisons(set.models, set.truth, kCloser);
  EXPECT_EQ(static_cast<std::int64_t>(log.size()), CountPairs(5, 40));
}

TEST(GenerateComparisonsTest, IdenticalModelsAlwaysTie) {
  const GroundTruth truth = LabelTruth(kBinary, {1, 0, 1, 1});
  const std::vector<double> s = {0.3, 0.7, 0.5, 0.9};
  const std::vector<PredictionSet> models = {BinaryPreds("x", s),
                                             BinaryPreds("y", s)};
  const ComparisonLog log = GenerateComparisons(models, truth, kCloser);
  for (const auto& r : log.records()) {
    EXPECT_EQ(r.outcome, Outcome::kTie);
  }
}

TEST(GenerateComparisonsTest, RejectsDuplicateNames) {
  const GroundTruth truth = LabelTruth(kBinary, {1});
  const std::vector<PredictionSet> models = {BinaryPreds("x", {0.1}),
                                             BinaryPreds("x", {0.2})};
  EXPECT_THROW(GenerateComparisons(models, truth, kCloser), ValidationError);
}

}  // namespace
}  // namespace rankbench
