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

#ifndef RANKBENCH_RANK_STATS_HPP_
#define RANKBENCH_RANK_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rankbench/bradley_terry.hpp"
#include "rankbench/error.hpp"
#include "rankbench/metrics.hpp"

namespace rankbench {

// Rank 1 is best. Exactly equal scores share the average of their ranks.
struct RankVector {
  std::vector<std::string> models;
  std::vector<double> ranks;
};

inline RankVector RanksFromScores(std::vector<std::string> models,
                                  std::span<const double> scores,
                                  bool higher_is_better) {
  if (models.size() != scores.size()) {
    throw ValidationError("model and score counts differ");
  }
  const size_t m = scores.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return higher_is_better ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  std::vector<double> ranks(m);
  size_t i = 0;
  while (i < m) {
    size_t j = i;
    while (j < m && scores[order[j]] == scores[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t t = i; t < j; ++t) ranks[order[t]] = shared;
    i = j;
  }
  return {std::move(models), std::move(ranks)};
}

// How score direction is handled when ranking a metric.
enum class RankOrientation {
  // Larger raw value ranks first for every metric, so lower-is-better
  // metrics correlate negatively with the rest.
  kRaw,
  // Best model ranks first according to the metric's direction.
  kOriented,
};

inline RankVector Ranks(const MetricReport& report,
                        RankOrientation orientation = RankOrientation::kOriented) {
  const bool higher = orientation == RankOrientation::kRaw ||
                      report.higher_is_better;
  return RanksFromScores(report.models, report.scores, higher);
}

inline RankVector Ranks(const BTRanking& ranking) {
  return RanksFromScores(ranking.models, ranking.scores, true);
}

inline MetricReport AsReport(const BTRanking& ranking,
                             std::string name = "bt") {
  return {std::move(name), true, ranking.models, ranking.scores};
}

namespace internal {

// Ranks of `b` permuted into the model order of `a`.
inline std::vector<double> AlignRanks(const RankVector& a,
                                      const RankVector& b) {
  if (a.models.size() != b.models.size()) {
    throw ValidationError("rank vectors cover different model sets");
  }
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < b.models.size(); ++i) index.emplace(b.models[i], i);
  if (index.size() != b.models.size()) {
    throw ValidationError("duplicate model in rank vector");
  }
  std::vector<double> aligned;
  aligned.reserve(a.models.size());
  for (const std::string& name : a.models) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw ValidationError("model '" + name + "' missing from rank vector");
    }
    aligned.push_back(b.ranks[it->second]);
  }
  return aligned;
}

}  // namespace internal

// Pearson correlation of tie-averaged ranks.
inline double Spearman(const RankVector& a, const RankVector& b) {
  const std::vector<double> rb = internal::AlignRanks(a, b);
  const std::vector<double>& ra = a.ranks;
  const size_t m = ra.size();
  if (m < 2) throw ValidationError("spearman needs at least 2 models");
  const double mean_a = std::accumulate(ra.begin(), ra.end(), 0.0) / m;
  const double mean_b = std::accumulate(rb.begin(), rb.end(), 0.0) / m;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < m; ++i) {
    cov += (ra[i] - mean_a) * (rb[i] - mean_b);
    var_a += (ra[i] - mean_a) * (ra[i] - mean_a);
    var_b += (rb[i] - mean_b) * (rb[i] - mean_b);
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw UndefinedMetricError(
        "spearman is undefined when all ranks are tied");
  }
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

// Number of model pairs ordered oppositely by the two rank vectors (Kendall
// tau distance). Pairs tied in either vector are not discordant.
inline std::int64_t RankingDistance(const RankVector& a, const RankVector& b) {
  const std::vector<double> rb = internal::AlignRanks(a, b);
  std::int64_t discordant = 0;
  for (size_t i = 0; i < rb.size(); ++i) {
    for (size_t j = i + 1; j < rb.size(); ++j) {
      const double da = a.ranks[i] - a.ranks[j];
      const double db = rb[i] - rb[j];
      if ((da < 0 && db > 0) || (da > 0 && db < 0)) ++discordant;
    }
  }
  return discordant;
}

struct CorrelationMatrix {
  std::vector<std::string> names;
  // Row-major, names.size() squared.
  std::vector<double> values;

  double operator()(size_t i, size_t j) const {
    return values[i * names.size() + j];
  }
};

// Pairwise Spearman correlations of the reports' rankings.
inline CorrelationMatrix Correlate(
    std::span<const MetricReport> reports,
    RankOrientation orientation = RankOrientation::kRaw) {
  if (reports.size() < 2) {
    throw ValidationError("correlation matrix needs at least 2 reports");
  }
  std::vector<RankVector> ranks;
  CorrelationMatrix out;
  for (const MetricReport& r : reports) {
    ranks.push_back(Ranks(r, orientation));
    out.names.push_back(r.metric);
  }
  const size_t k = ranks.size();
  out.values.assign(k * k, 1.0);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      const double rho = Spearman(ranks[i], ranks[j]);
      out.values[i * k + j] = out.values[j * k + i] = rho;
    }
  }
  return out;
}

}  // namespace rankbench

#endif  // RANKBENCH_RANK_STATS_HPP_
