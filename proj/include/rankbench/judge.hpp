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

// The per-example judge: decides which of two model outputs is closer to the
// reference, or declares a tie.

#ifndef RANKBENCH_JUDGE_HPP_
#define RANKBENCH_JUDGE_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rankbench/data.hpp"
#include "rankbench/error.hpp"
#include "rankbench/metrics.hpp"

namespace rankbench {

enum class JudgeType { kCloserDecisionValue, kTextMetric };

struct JudgeRule {
  JudgeType type = JudgeType::kCloserDecisionValue;
  // Used by kTextMetric only: chrF, edit distance or WER.
  Metric text_metric = Metric::kChrF;
  // Differences no larger than this are ties.
  double tie_tolerance = 0.0;

  static JudgeRule CloserDecisionValue(double tie_tolerance = 0.0) {
    return {JudgeType::kCloserDecisionValue, Metric::kChrF, tie_tolerance};
  }
  static JudgeRule TextMetric(Metric metric, double tie_tolerance = 0.0) {
    if (metric != Metric::kChrF && metric != Metric::kEditDistance &&
        metric != Metric::kWordErrorRate) {
      throw ValidationError("'" + std::string(Info(metric).name) +
                            "' is not a per-example text metric");
    }
    return {JudgeType::kTextMetric, metric, tie_tolerance};
  }
};

// Distance of a categorical output from the true label: |y - s| for binary,
// 1 - (decision value of the true class) for multi-class.
inline double Closeness(const Output& out, int truth, const DatasetKind& kind) {
  if (kind.type() == TaskType::kBinary) {
    return std::abs(truth - PositiveScore(out, kind));
  }
  return 1.0 - DecisionVector(out, kind)[truth];
}

inline double TextScore(Metric metric, const std::string& hyp,
                        const std::string& ref) {
  switch (metric) {
    case Metric::kChrF:
      return SentenceChrF(hyp, ref);
    case Metric::kEditDistance:
      return static_cast<double>(CharEditDistance(hyp, ref));
    case Metric::kWordErrorRate:
      return SentenceWer(hyp, ref);
    default:
      throw ValidationError("'" + std::string(Info(metric).name) +
                            "' is not a per-example text metric");
  }
}

// kLeft means `out_i` wins, kRight means `out_j` wins.
inline Outcome Judge(const JudgeRule& rule, const Output& out_i,
                     const Output& out_j, const Reference& truth,
                     const DatasetKind& kind) {
  if (rule.tie_tolerance < 0.0 || !std::isfinite(rule.tie_tolerance)) {
    throw ValidationError("tie tolerance must be finite and non-negative");
  }
  ValidateOutput(out_i, kind);
  ValidateOutput(out_j, kind);
  ValidateReference(truth, kind);
  double badness_i = 0.0;
  double badness_j = 0.0;
  if (rule.type == JudgeType::kCloserDecisionValue) {
    if (!kind.categorical()) {
      throw ValidationError(
          "decision-value judging requires a categorical dataset");
    }
    const int label = std::get<int>(truth);
    badness_i = Closeness(out_i, label, kind);
    badness_j = Closeness(out_j, label, kind);
  } else {
    if (kind.categorical()) {
      throw ValidationError("text-metric judging requires a text dataset");
    }
    const auto& ref = std::get<std::string>(truth);
    const double score_i =
        TextScore(rule.text_metric, std::get<std::string>(out_i), ref);
    const double score_j =
        TextScore(rule.text_metric, std::get<std::string>(out_j), ref);
    const bool higher = Info(rule.text_metric).higher_is_better;
    badness_i = higher ? -score_i : score_i;
    badness_j = higher ? -score_j : score_j;
  }
  if (std::abs(badness_i - badness_j) <= rule.tie_tolerance) {
    return Outcome::kTie;
  }
  return badness_i < badness_j ? Outcome::kLeft : Outcome::kRight;
}

// Judges every model pair on every example. Records are ordered by example
// (ground-truth order), then by model pair in lexicographic name order; the
// left model is the lexicographically smaller one.
inline ComparisonLog GenerateComparisons(std::span<const PredictionSet> models,
                                         const GroundTruth& truth,
                                         const JudgeRule& rule) {
  if (models.size() < 2) {
    throw ValidationError("comparisons need at least 2 models");
  }
  std::vector<size_t> order(models.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return models[a].model() < models[b].model();
  });
  for (size_t k = 1; k < order.size(); ++k) {
    if (models[order[k]].model() == models[order[k - 1]].model()) {
      throw ValidationError("duplicate model name '" +
                            models[order[k]].model() + "'");
    }
  }
  std::vector<std::vector<const Output*>> aligned;
  std::vector<std::string> names;
  for (size_t idx : order) {
    aligned.push_back(AlignOutputs(models[idx], truth));
    names.push_back(models[idx].model());
  }
  ComparisonLog log(names);
  const size_t m = names.size();
  log.Reserve(truth.size() * m * (m - 1) / 2);
  for (size_t e = 0; e < truth.size(); ++e) {
    const std::uint32_t example = log.InternExample(truth.ids()[e]);
    const Reference& ref = truth.references()[e];
    for (size_t a = 0; a < m; ++a) {
      for (size_t b = a + 1; b < m; ++b) {
        log.Add(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                Judge(rule, *aligned[a][e], *aligned[b][e], ref, truth.kind()),
                example);
      }
    }
  }
  return log;
}

}  // namespace rankbench

#endif  // RANKBENCH_JUDGE_HPP_
