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

// Bradley-Terry aggregation of pairwise comparisons.
//
// Ties count as half a win for each side. Scores are fit by maximum
// likelihood with a minorization-maximization iteration started from the
// uniform vector and renormalized to sum to one after every sweep.

#ifndef RANKBENCH_BRADLEY_TERRY_HPP_
#define RANKBENCH_BRADLEY_TERRY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankbench/data.hpp"
#include "rankbench/error.hpp"
#include "rankbench/parallel.hpp"
#include "rankbench/random.hpp"

namespace rankbench {

// m x m effective-win counts: W(i, j) = wins of i over j + 0.5 * ties.
class ComparisonMatrix {
 public:
  explicit ComparisonMatrix(std::vector<std::string> models)
      : models_(std::move(models)),
        wins_(models_.size() * models_.size(), 0.0) {}

  size_t size() const { return models_.size(); }
  const std::vector<std::string>& models() const { return models_; }

  double operator()(size_t i, size_t j) const { return wins_[i * size() + j]; }
  double& at(size_t i, size_t j) { return wins_[i * size() + j]; }

  // Total comparisons between i and j.
  double Games(size_t i, size_t j) const {
    return (*this)(i, j) + (*this)(j, i);
  }

  friend bool operator==(const ComparisonMatrix&,
                         const ComparisonMatrix&) = default;

 private:
  std::vector<std::string> models_;
  std::vector<double> wins_;
};

inline ComparisonMatrix Tally(const ComparisonLog& log) {
  if (log.empty()) throw ValidationError("no comparisons to tally");
  if (log.models().size() < 2) {
    throw ValidationError("comparisons must involve at least 2 models");
  }
  ComparisonMatrix w(log.models());
  for (const ComparisonLog::Record& r : log.records()) {
    if (r.left == r.right) {
      throw ValidationError("self-comparison of model '" +
                            log.models()[r.left] + "'");
    }
    switch (r.outcome) {
      case Outcome::kLeft:
        w.at(r.left, r.right) += 1.0;
        break;
      case Outcome::kRight:
        w.at(r.right, r.left) += 1.0;
        break;
      case Outcome::kTie:
        w.at(r.left, r.right) += 0.5;
        w.at(r.right, r.left) += 0.5;
        break;
    }
  }
  return w;
}

// Connected components of the graph whose edges are model pairs with at
// least one comparison. Components are listed by smallest member index.
inline std::vector<std::vector<size_t>> ConnectedComponents(
    const ComparisonMatrix& w) {
  const size_t m = w.size();
  std::vector<int> component(m, -1);
  std::vector<std::vector<size_t>> components;
  for (size_t start = 0; start < m; ++start) {
    if (component[start] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<size_t> stack = {start};
    component[start] = id;
    while (!stack.empty()) {
      const size_t i = stack.back();
      stack.pop_back();
      components[id].push_back(i);
      for (size_t j = 0; j < m; ++j) {
        if (component[j] < 0 && j != i && w.Games(i, j) > 0.0) {
          component[j] = id;
          stack.push_back(j);
        }
      }
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

struct FitOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
  // Virtual ties added to every pair before fitting (0 = plain MLE).
  double prior = 0.0;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct BTRanking {
  std::vector<std::string> models;
  std::vector<double> scores;
  // Model indices by descending score; equal scores ordered by name.
  std::vector<size_t> order;
  std::optional<std::vector<Interval>> intervals;
  int iterations = 0;
  bool converged = false;

  // 1-based position of each model in `order`.
  std::vector<int> Positions() const {
    std::vector<int> pos(models.size());
    for (size_t r = 0; r < order.size(); ++r) {
      pos[order[r]] = static_cast<int>(r) + 1;
    }
    return pos;
  }
};

inline std::vector<size_t> OrderByScore(const std::vector<std::string>& models,
                                        const std::vector<double>& scores) {
  std::vector<size_t> order(models.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return models[a] < models[b];
  });
  return order;
}

// Log-likelihood sum_{i != j} W(i, j) log(p_i / (p_i + p_j)).
inline double LogLikelihood(const ComparisonMatrix& w,
                            const std::vector<double>& p) {
  double ll = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = 0; j < w.size(); ++j) {
      if (i != j && w(i, j) > 0.0) ll += w(i, j) * std::log(p[i] / (p[i] + p[j]));
    }
  }
  return ll;
}

inline BTRanking FitBradleyTerry(const ComparisonMatrix& input,
                                 const FitOptions& options = {}) {
  const size_t m = input.size();
  if (m < 2) throw ValidationError("Bradley-Terry needs at least 2 models");
  if (!(options.prior >= 0.0) || !std::isfinite(options.prior)) {
    throw ValidationError("prior must be finite and non-negative");
  }
  ComparisonMatrix w = input;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const double v = w(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("comparison counts must be finite and >= 0");
      }
      if (i == j) {
        w.at(i, j) = 0.0;
      } else {
        w.at(i, j) += 0.5 * options.prior;
      }
    }
  }

  const auto components = ConnectedComponents(w);
  if (components.size() > 1) {
    std::vector<std::vector<std::string>> named;
    std::string message = "comparison graph is disconnected:";
    for (const auto& comp : components) {
      named.emplace_back();
      message += " {";
      for (size_t k = 0; k < comp.size(); ++k) {
        named.back().push_back(w.models()[comp[k]]);
        message += (k ? ", " : "") + w.models()[comp[k]];
      }
      message += "}";
    }
    throw DisconnectedGraphError(message, std::move(named));
  }

  std::vector<double> total_wins(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) total_wins[i] += w(i, j);
  }

  BTRanking result;
  result.models = w.models();
  std::vector<double> p(m, 1.0 / static_cast<double>(m));
  std::vector<double> previous(m);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    previous = p;
    // Updates are applied in place; simultaneous updates can cycle.
    for (size_t i = 0; i < m; ++i) {
      double numerator = 0.0;
      double denominator = 0.0;
      double games_ratio = 0.0;
      for (size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double sum = p[i] + p[j];
        if (sum <= 0.0) continue;
        if (w(i, j) > 0.0) numerator += w(i, j) * p[j] / sum;
        if (w(j, i) > 0.0) denominator += w(j, i) / sum;
        games_ratio += w.Games(i, j) / sum;
      }
      if (denominator > 0.0) {
        p[i] = numerator / denominator;
      } else {
        // Undefeated: fall back to the classic update W_i / sum N_ij/(p_i+p_j).
        p[i] = games_ratio > 0.0 ? total_wins[i] / games_ratio : 0.0;
      }
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw NumericalError("Bradley-Terry iteration degenerated");
    }
    double delta = 0.0;
    for (size_t i = 0; i < m; ++i) {
      p[i] /= total;
      delta = std::max(delta, std::abs(p[i] - previous[i]));
    }
    result.iterations = iter;
    if (delta < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(p);
  result.order = OrderByScore(result.models, result.scores);
  return result;
}

// Per-pair sample budget for linearithmic sampling.
struct SamplePlan {
  std::int64_t per_pair = 1;
  std::uint64_t seed = 42;
};

// ceil(multiplier * m * ln m) comparisons per model pair.
inline SamplePlan MakeSamplePlan(std::int64_t num_models,
                                 double multiplier = 12.0,
                                 std::uint64_t seed = 42) {
  if (num_models < 2) throw ValidationError("sample plan needs m >= 2");
  if (!(multiplier > 0.0)) {
    throw ValidationError("sample multiplier must be positive");
  }
  const double m = static_cast<double>(num_models);
  return {static_cast<std::int64_t>(std::ceil(multiplier * m * std::log(m))),
          seed};
}

// Record indices of a log grouped by unordered model pair, in order of each
// pair's first appearance.
struct PairGroup {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  std::vector<std::uint32_t> records;
};

inline std::vector<PairGroup> GroupByPair(const ComparisonLog& log) {
  std::vector<PairGroup> groups;
  std::map<std::pair<std::uint32_t, std::uint32_t>, size_t> index;
  for (size_t k = 0; k < log.size(); ++k) {
    const auto& r = log.records()[k];
    const auto key = std::minmax(r.left, r.right);
    auto [it, inserted] = index.try_emplace({key.first, key.second},
                                            groups.size());
    if (inserted) groups.push_back({key.first, key.second, {}});
    groups[it->second].records.push_back(static_cast<std::uint32_t>(k));
  }
  return groups;
}

// Model pairs with no comparison at all.
inline std::vector<std::pair<std::string, std::string>> MissingPairs(
    const ComparisonLog& log) {
  const size_t m = log.models().size();
  std::vector<char> seen(m * m, 0);
  for (const auto& r : log.records()) {
    seen[r.left * m + r.right] = seen[r.right * m + r.left] = 1;
  }
  std::vector<std::pair<std::string, std::string>> missing;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      if (!seen[i * m + j]) missing.emplace_back(log.models()[i], log.models()[j]);
    }
  }
  return missing;
}

// For every observed pair, draws plan.per_pair records uniformly with
// replacement, or keeps all of them when the pair has fewer records.
inline ComparisonLog SampleComparisons(const ComparisonLog& log,
                                       const std::vector<PairGroup>& groups,
                                       const SamplePlan& plan) {
  if (plan.per_pair < 1) throw ValidationError("per-pair count must be >= 1");
  ComparisonLog out = log.EmptyLike();
  Rng rng(plan.seed);
  for (const PairGroup& g : groups) {
    const auto available = static_cast<std::int64_t>(g.records.size());
    if (available < plan.per_pair) {
      for (std::uint32_t k : g.records) out.mutable_records().push_back(log.records()[k]);
      continue;
    }
    for (std::int64_t d = 0; d < plan.per_pair; ++d) {
      const std::uint32_t k = g.records[rng.Below(g.records.size())];
      out.mutable_records().push_back(log.records()[k]);
    }
  }
  return out;
}

inline ComparisonLog SampleComparisons(const ComparisonLog& log,
                                       const SamplePlan& plan) {
  return SampleComparisons(log, GroupByPair(log), plan);
}

struct BootstrapOptions {
  int resamples = 1000;
  double level = 0.95;
  int threads = 1;
  int max_attempts = 10;
  FitOptions fit;
};

// Linear interpolation between order statistics of sorted `values`.
inline double Percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw ValidationError("percentile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Full-data point estimate plus percentile intervals over independent
// per-pair resamples. Resample r uses seed MixSeed(plan.seed, {r, attempt}),
// so the result does not depend on the number of threads. Intervals are
// widened to contain the point estimate if needed.
inline BTRanking BootstrapIntervals(const ComparisonLog& log,
                                    const SamplePlan& plan,
                                    const BootstrapOptions& options = {}) {
  if (options.resamples < 1) throw ValidationError("resamples must be >= 1");
  if (!(options.level > 0.0 && options.level < 1.0)) {
    throw ValidationError("confidence level must be in (0, 1)");
  }
  BTRanking point = FitBradleyTerry(Tally(log), options.fit);
  const std::vector<PairGroup> groups = GroupByPair(log);
  const size_t m = point.models.size();
  const auto resamples = static_cast<size_t>(options.resamples);
  std::vector<std::vector<double>> draws(resamples);

  auto run_one = [&](size_t r) {
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
      const SamplePlan sub{plan.per_pair,
                           MixSeed(plan.seed, {r, static_cast<std::uint64_t>(
                                                      attempt)})};
      try {
        draws[r] =
            FitBradleyTerry(Tally(SampleComparisons(log, groups, sub)),
                            options.fit)
                .scores;
        return;
      } catch (const DisconnectedGraphError&) {
      }
    }
    throw NumericalError("bootstrap resample " + std::to_string(r) +
                         " stayed disconnected after " +
                         std::to_string(options.max_attempts) + " attempts");
  };

  ParallelFor(resamples, options.threads, run_one);

  const double alpha = 1.0 - options.level;
  std::vector<Interval> intervals(m);
  std::vector<double> column(resamples);
  for (size_t i = 0; i < m; ++i) {
    for (size_t r = 0; r < resamples; ++r) column[r] = draws[r][i];
    std::sort(column.begin(), column.end());
    intervals[i].low =
        std::min(Percentile(column, alpha / 2.0), point.scores[i]);
    intervals[i].high =
        std::max(Percentile(column, 1.0 - alpha / 2.0), point.scores[i]);
  }
  point.intervals = std::move(intervals);
  return point;
}

}  // namespace rankbench

#endif  // RANKBENCH_BRADLEY_TERRY_HPP_
