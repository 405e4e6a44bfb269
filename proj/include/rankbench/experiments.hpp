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

// Seeded Monte Carlo studies of when pairwise aggregation recovers the true
// ordering of models:
//
//   binary-response  identical random binary classifiers, global metrics vs BT
//   tie-curve        rank recovery as a growing share of outcomes become ties
//   stability        ranking changes vs number of comparisons per pair
//   magnitude        probability of ordering two models vs their score gap
//
// Trial i of grid point a always draws from MixSeed(seed, {a, i, ...}), so
// results are bit-identical for any thread count.

#ifndef RANKBENCH_EXPERIMENTS_HPP_
#define RANKBENCH_EXPERIMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankbench/bradley_terry.hpp"
#include "rankbench/data.hpp"
#include "rankbench/judge.hpp"
#include "rankbench/metrics.hpp"
#include "rankbench/parallel.hpp"
#include "rankbench/random.hpp"
#include "rankbench/rank_stats.hpp"
#include "rankbench/table.hpp"
#include "rankbench/transforms.hpp"

namespace rankbench::experiments {

using Summary = std::vector<std::pair<std::string, double>>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Models with known Bradley-Terry strengths.
struct Population {
  std::vector<std::string> models;
  std::vector<double> strengths;
};

// m models with geometrically spaced strengths; the strongest beats the
// weakest with probability ratio / (1 + ratio). Model names sort by strength
// ("q1" weakest).
inline Population GeometricPopulation(int m, double ratio) {
  if (m < 2) throw ValidationError("population needs at least 2 models");
  if (!(ratio >= 1.0)) throw ValidationError("strength ratio must be >= 1");
  Population pop;
  for (int k = 0; k < m; ++k) {
    pop.models.push_back("q" + std::to_string(k + 1));
    pop.strengths.push_back(std::pow(ratio, static_cast<double>(k) / (m - 1)));
  }
  return pop;
}

// `per_pair` independent outcomes for every pair, P(i beats j) from the
// strengths. Never produces ties.
inline ComparisonLog SimulateComparisons(const Population& pop,
                                         std::int64_t per_pair, Rng& rng) {
  ComparisonLog log(pop.models);
  const size_t m = pop.models.size();
  log.Reserve(static_cast<size_t>(per_pair) * m * (m - 1) / 2);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      const double p = pop.strengths[i] / (pop.strengths[i] + pop.strengths[j]);
      for (std::int64_t k = 0; k < per_pair; ++k) {
        log.Add(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                rng.Bernoulli(p) ? Outcome::kLeft : Outcome::kRight);
      }
    }
  }
  return log;
}

// Pool-adjacent-violators least-squares fit under a monotonicity constraint.
inline std::vector<double> IsotonicFit(std::span<const double> y,
                                       bool increasing) {
  struct Block {
    double sum;
    size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (double v : y) {
    blocks.push_back({increasing ? v : -v, 1});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      blocks[blocks.size() - 2].sum += blocks.back().sum;
      blocks[blocks.size() - 2].count += blocks.back().count;
      blocks.pop_back();
    }
  }
  std::vector<double> fit;
  fit.reserve(y.size());
  for (const Block& b : blocks) {
    fit.insert(fit.end(), b.count, increasing ? b.mean() : -b.mean());
  }
  return fit;
}

// Root-mean-square distance between `y` and its monotone fit.
inline double TrendResidualRms(std::span<const double> y, bool increasing) {
  if (y.empty()) return 0.0;
  const std::vector<double> fit = IsotonicFit(y, increasing);
  double ss = 0.0;
  for (size_t i = 0; i < y.size(); ++i) ss += (y[i] - fit[i]) * (y[i] - fit[i]);
  return std::sqrt(ss / static_cast<double>(y.size()));
}

inline double Mean(std::span<const double> v) {
  double total = 0.0;
  size_t n = 0;
  for (double x : v) {
    if (!std::isnan(x)) {
      total += x;
      ++n;
    }
  }
  return n ? total / static_cast<double>(n) : kNaN;
}

inline double StdDev(std::span<const double> v) {
  const double mu = Mean(v);
  double ss = 0.0;
  size_t n = 0;
  for (double x : v) {
    if (!std::isnan(x)) {
      ss += (x - mu) * (x - mu);
      ++n;
    }
  }
  return n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
}

inline double Spread(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

// Spearman correlation, or NaN when one side has no rank variance.
inline double SpearmanOrNaN(const RankVector& a, const RankVector& b) {
  try {
    return Spearman(a, b);
  } catch (const UndefinedMetricError&) {
    return kNaN;
  }
}

// ---------------------------------------------------------------------------
// binary-response

struct BinaryResponseOptions {
  int models = 3;
  int examples = 1000;
  int trials = 100;
  double multiplier = 12.0;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct BinaryResponseTrial {
  std::uint64_t seed = 0;
  std::vector<double> accuracy;
  std::vector<double> roc_auc;
  std::vector<double> f1;
  std::vector<double> bt;
  // Spearman(global metric, BT); NaN when undefined.
  double spearman_accuracy_bt = kNaN;
  double spearman_auc_bt = kNaN;
  double spearman_f1_bt = kNaN;
  // Smallest pairwise Spearman among the three global metrics.
  double global_agreement = kNaN;
  double bt_spread = 0.0;
  // Largest max-min spread among the three global metrics.
  double global_spread = 0.0;
};

struct BinaryResponseResult {
  std::vector<std::string> models;
  std::vector<BinaryResponseTrial> trials;

  Table ToTable() const {
    Table t{{"trial", "seed", "model", "accuracy", "roc_auc", "f1", "bt_score"},
            {}};
    for (size_t i = 0; i < trials.size(); ++i) {
      const auto& tr = trials[i];
      for (size_t k = 0; k < models.size(); ++k) {
        t.rows.push_back({static_cast<std::int64_t>(i),
                          std::to_string(tr.seed), models[k], tr.accuracy[k],
                          tr.roc_auc[k], tr.f1[k], tr.bt[k]});
      }
    }
    return t;
  }

  // Fraction of trials where BT scores are more spread out than every
  // global metric.
  double BtSpreadShare() const {
    size_t wins = 0;
    for (const auto& tr : trials) wins += tr.bt_spread > tr.global_spread;
    return static_cast<double>(wins) / static_cast<double>(trials.size());
  }

  Summary Summarize() const {
    std::vector<double> acc, auc, f1, bt_spread, g_spread, s_acc, s_auc, s_f1;
    double lo = 1.0, hi = 0.0;
    size_t agree = 0;
    std::vector<size_t> top(models.size(), 0);
    for (const auto& tr : trials) {
      for (size_t k = 0; k < models.size(); ++k) {
        acc.push_back(tr.accuracy[k]);
        auc.push_back(tr.roc_auc[k]);
        f1.push_back(tr.f1[k]);
        lo = std::min({lo, tr.accuracy[k], tr.roc_auc[k], tr.f1[k]});
        hi = std::max({hi, tr.accuracy[k], tr.roc_auc[k], tr.f1[k]});
      }
      bt_spread.push_back(tr.bt_spread);
      g_spread.push_back(tr.global_spread);
      s_acc.push_back(tr.spearman_accuracy_bt);
      s_auc.push_back(tr.spearman_auc_bt);
      s_f1.push_back(tr.spearman_f1_bt);
      agree += tr.global_agreement >= 0.9;
      ++top[std::max_element(tr.bt.begin(), tr.bt.end()) - tr.bt.begin()];
    }
    const auto n = static_cast<double>(trials.size());
    Summary s = {
        {"mean_accuracy", Mean(acc)},
        {"mean_roc_auc", Mean(auc)},
        {"mean_f1", Mean(f1)},
        {"min_global_metric", lo},
        {"max_global_metric", hi},
        {"mean_bt_spread", Mean(bt_spread)},
        {"mean_global_spread", Mean(g_spread)},
        {"bt_spread_exceeds_global_share", BtSpreadShare()},
        {"global_agreement_share", static_cast<double>(agree) / n},
        {"mean_spearman_accuracy_bt", Mean(s_acc)},
        {"mean_spearman_roc_auc_bt", Mean(s_auc)},
        {"mean_spearman_f1_bt", Mean(s_f1)},
    };
    for (size_t k = 0; k < models.size(); ++k) {
      s.emplace_back("bt_top_share_" + models[k],
                     static_cast<double>(top[k]) / n);
    }
    return s;
  }
};

inline BinaryResponseResult RunBinaryResponse(
    const BinaryResponseOptions& options) {
  if (options.trials < 1) throw ValidationError("trials must be >= 1");
  BinaryResponseResult result;
  result.trials.resize(options.trials);
  ParallelFor(result.trials.size(), options.threads, [&](size_t i) {
    BinaryResponseTrial& tr = result.trials[i];
    tr.seed = MixSeed(options.seed, {i});
    const SyntheticSet set =
        RandomBinaryModels(options.models, options.examples, tr.seed);
    std::vector<std::string> names;
    for (const PredictionSet& p : set.models) {
      names.push_back(p.model());
      tr.accuracy.push_back(Accuracy(p, set.truth));
      tr.roc_auc.push_back(RocAuc(p, set.truth));
      tr.f1.push_back(F1(p, set.truth, F1Average::kBinary));
    }
    const ComparisonLog all = GenerateComparisons(
        set.models, set.truth, JudgeRule::CloserDecisionValue());
    SamplePlan plan = MakeSamplePlan(options.models, options.multiplier,
                                     MixSeed(tr.seed, {1}));
    const BTRanking bt = FitBradleyTerry(Tally(SampleComparisons(all, plan)));
    // Tally keeps first-appearance order, which is the sorted name order of
    // GenerateComparisons; map back to the generator's order.
    for (const std::string& name : names) {
      const auto it = std::find(bt.models.begin(), bt.models.end(), name);
      tr.bt.push_back(bt.scores[it - bt.models.begin()]);
    }
    const RankVector r_acc = RanksFromScores(names, tr.accuracy, true);
    const RankVector r_auc = RanksFromScores(names, tr.roc_auc, true);
    const RankVector r_f1 = RanksFromScores(names, tr.f1, true);
    const RankVector r_bt = RanksFromScores(names, tr.bt, true);
    tr.spearman_accuracy_bt = SpearmanOrNaN(r_acc, r_bt);
    tr.spearman_auc_bt = SpearmanOrNaN(r_auc, r_bt);
    tr.spearman_f1_bt = SpearmanOrNaN(r_f1, r_bt);
    const double a = SpearmanOrNaN(r_acc, r_auc);
    const double b = SpearmanOrNaN(r_acc, r_f1);
    const double c = SpearmanOrNaN(r_auc, r_f1);
    tr.global_agreement = (std::isnan(a) || std::isnan(b) || std::isnan(c))
                              ? kNaN
                              : std::min({a, b, c});
    tr.bt_spread = Spread(tr.bt);
    tr.global_spread = std::max(
        {Spread(tr.accuracy), Spread(tr.roc_auc), Spread(tr.f1)});
    if (i == 0) result.models = names;
  });
  return result;
}

// ---------------------------------------------------------------------------
// tie-curve

struct TieCurveOptions {
  int models = 5;
  double strength_ratio = 3.0;
  // q takes steps + 1 values 0, 1/steps, ..., 1.
  int steps = 100;
  int trials = 1000;
  double multiplier = 12.0;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct TieCurvePoint {
  double q = 0.0;
  double mean_spearman = 0.0;
  double sd_spearman = 0.0;
};

inline Table ToTable(const std::vector<TieCurvePoint>& curve) {
  Table t{{"q", "mean_spearman", "sd_spearman"}, {}};
  for (const auto& p : curve) {
    t.rows.push_back({p.q, p.mean_spearman, p.sd_spearman});
  }
  return t;
}

// Per q: mean Spearman between the true strength order and the BT order fit
// on ceil(multiplier m ln m) comparisons per pair, each turned into a tie
// with probability q. A trial whose BT scores are all equal scores 0.
inline std::vector<TieCurvePoint> RunTieCurve(const TieCurveOptions& options) {
  if (options.trials < 1 || options.steps < 1) {
    throw ValidationError("trials and steps must be >= 1");
  }
  const Population pop =
      GeometricPopulation(options.models, options.strength_ratio);
  const RankVector truth = RanksFromScores(pop.models, pop.strengths, true);
  const std::int64_t per_pair =
      MakeSamplePlan(options.models, options.multiplier).per_pair;
  const size_t points = static_cast<size_t>(options.steps) + 1;
  const size_t trials = static_cast<size_t>(options.trials);
  std::vector<double> rho(points * trials);
  ParallelFor(rho.size(), options.threads, [&](size_t cell) {
    const size_t a = cell / trials;
    const size_t t = cell % trials;
    const double q = static_cast<double>(a) / options.steps;
    Rng rng(MixSeed(options.seed, {a, t}));
    const ComparisonLog log = InjectTies(SimulateComparisons(pop, per_pair, rng),
                                         q, MixSeed(options.seed, {a, t, 1}));
    const BTRanking bt = FitBradleyTerry(Tally(log));
    const double r = SpearmanOrNaN(truth, Ranks(bt));
    rho[cell] = std::isnan(r) ? 0.0 : r;
  });
  std::vector<TieCurvePoint> curve(points);
  for (size_t a = 0; a < points; ++a) {
    const std::span<const double> row(rho.data() + a * trials, trials);
    curve[a] = {static_cast<double>(a) / options.steps, Mean(row), StdDev(row)};
  }
  return curve;
}

// ---------------------------------------------------------------------------
// stability

struct StabilityOptions {
  int models = 9;
  double strength_ratio = 3.0;
  std::int64_t reference_per_pair = 100000;
  std::int64_t k_min = 10;
  std::int64_t k_max = 1000;
  std::int64_t k_step = 10;
  // Also evaluate k = ceil(multiplier m ln m) if it is not on the grid.
  bool include_budget = true;
  double multiplier = 12.0;
  int trials = 100;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct StabilityPoint {
  std::int64_t k = 0;
  double mean_distance = 0.0;
};

struct StabilityResult {
  std::vector<StabilityPoint> curve;
  std::int64_t budget = 0;
  RankVector reference;
  std::vector<std::string> warnings;

  double DistanceAt(std::int64_t k) const {
    for (const auto& p : curve) {
      if (p.k == k) return p.mean_distance;
    }
    throw ValidationError("k=" + std::to_string(k) + " is not on the curve");
  }
};

inline Table ToTable(const StabilityResult& result) {
  Table t{{"k", "mean_distance"}, {}};
  for (const auto& p : result.curve) t.rows.push_back({p.k, p.mean_distance});
  return t;
}

// Per k: mean Kendall distance between BT rankings fit on k comparisons per
// pair (drawn with replacement from the pool) and the reference ranking.
// Without `source`, the pool is `reference_per_pair` simulated comparisons
// per pair of a geometric population and the reference is the fit on the
// whole pool. With `source`, the reference is fit on `reference_per_pair`
// draws per pair, or on all of `source` (with a warning) if some pair has
// fewer records.
inline StabilityResult RunStability(const StabilityOptions& options,
                                    const ComparisonLog* source = nullptr) {
  if (options.trials < 1) throw ValidationError("trials must be >= 1");
  if (options.k_min < 1 || options.k_step < 1 || options.k_max < options.k_min) {
    throw ValidationError("invalid k grid");
  }
  StabilityResult result;
  ComparisonLog synthetic;
  const ComparisonLog* pool = source;
  std::optional<ComparisonLog> reference_log;
  if (pool == nullptr) {
    Rng rng(MixSeed(options.seed, {0}));
    synthetic = SimulateComparisons(
        GeometricPopulation(options.models, options.strength_ratio),
        options.reference_per_pair, rng);
    pool = &synthetic;
  }
  const std::vector<PairGroup> groups = GroupByPair(*pool);
  if (source != nullptr) {
    size_t smallest = std::numeric_limits<size_t>::max();
    for (const auto& g : groups) smallest = std::min(smallest, g.records.size());
    if (static_cast<std::int64_t>(smallest) >= options.reference_per_pair) {
      reference_log = SampleComparisons(
          *pool, groups,
          {options.reference_per_pair, MixSeed(options.seed, {0})});
    } else {
      result.warnings.push_back(
          "fewer than " + std::to_string(options.reference_per_pair) +
          " comparisons for some pair; the reference ranking uses all data");
    }
  }
  const BTRanking reference =
      FitBradleyTerry(Tally(reference_log ? *reference_log : *pool));
  result.reference = Ranks(reference);

  std::vector<std::int64_t> ks;
  for (std::int64_t k = options.k_min; k <= options.k_max; k += options.k_step) {
    ks.push_back(k);
  }
  result.budget = MakeSamplePlan(static_cast<std::int64_t>(pool->models().size()),
                                 options.multiplier)
                      .per_pair;
  if (options.include_budget &&
      std::find(ks.begin(), ks.end(), result.budget) == ks.end()) {
    ks.insert(std::upper_bound(ks.begin(), ks.end(), result.budget),
              result.budget);
  }

  const size_t trials = static_cast<size_t>(options.trials);
  std::vector<double> distance(ks.size() * trials);
  ParallelFor(distance.size(), options.threads, [&](size_t cell) {
    const size_t a = cell / trials;
    const size_t t = cell % trials;
    const SamplePlan plan{ks[a], MixSeed(options.seed, {
                                     static_cast<std::uint64_t>(ks[a]), t, 1})};
    const BTRanking bt =
        FitBradleyTerry(Tally(SampleComparisons(*pool, groups, plan)));
    distance[cell] =
        static_cast<double>(RankingDistance(result.reference, Ranks(bt)));
  });
  for (size_t a = 0; a < ks.size(); ++a) {
    result.curve.push_back(
        {ks[a], Mean(std::span<const double>(distance.data() + a * trials,
                                              trials))});
  }
  return result;
}

// ---------------------------------------------------------------------------
// magnitude

struct MagnitudeOptions {
  // Gaps are 1 - linspace(grid_low, grid_high, steps).
  int steps = 100;
  double grid_low = 0.9;
  double grid_high = 1.0;
  int trials = 1000;
  int examples = 100;
  // Comparisons sampled per trial; defaults to the m = 2 budget (17).
  std::optional<std::int64_t> comparisons;
  double noise = 0.25;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct MagnitudePoint {
  double delta = 0.0;
  double p_correct = 0.0;
};

inline Table ToTable(const std::vector<MagnitudePoint>& curve) {
  Table t{{"delta", "p_correct"}, {}};
  for (const auto& p : curve) t.rows.push_back({p.delta, p.p_correct});
  return t;
}

// The gap grid in ascending order.
inline std::vector<double> MagnitudeGrid(const MagnitudeOptions& options) {
  if (options.steps < 2) throw ValidationError("need at least 2 grid steps");
  std::vector<double> deltas;
  const double step =
      (options.grid_high - options.grid_low) / (options.steps - 1);
  for (int i = 0; i < options.steps; ++i) {
    const double x = i + 1 == options.steps ? options.grid_high
                                            : options.grid_low + i * step;
    deltas.push_back(std::max(0.0, 1.0 - x));
  }
  std::reverse(deltas.begin(), deltas.end());
  return deltas;
}

// Per gap: fraction of trials in which BT, fit on a sample of judged
// comparisons between a gapped pair, scores A strictly above B.
inline std::vector<MagnitudePoint> RunMagnitude(
    const MagnitudeOptions& options) {
  if (options.trials < 1) throw ValidationError("trials must be >= 1");
  const std::vector<double> deltas = MagnitudeGrid(options);
  const std::int64_t comparisons =
      options.comparisons.value_or(MakeSamplePlan(2).per_pair);
  const size_t trials = static_cast<size_t>(options.trials);
  std::vector<char> correct(deltas.size() * trials);
  ParallelFor(correct.size(), options.threads, [&](size_t cell) {
    const size_t a = cell / trials;
    const size_t t = cell % trials;
    const SyntheticSet set = GappedPair(deltas[a], options.examples,
                                        MixSeed(options.seed, {a, t}),
                                        options.noise);
    const ComparisonLog log = GenerateComparisons(
        set.models, set.truth, JudgeRule::CloserDecisionValue());
    const BTRanking bt = FitBradleyTerry(Tally(SampleComparisons(
        log, {comparisons, MixSeed(options.seed, {a, t, 1})})));
    // GenerateComparisons orders models by name: A first, then B.
    correct[cell] = bt.scores[0] > bt.scores[1];
  });
  std::vector<MagnitudePoint> curve;
  for (size_t a = 0; a < deltas.size(); ++a) {
    const auto hits = std::count(correct.begin() + a * trials,
                                 correct.begin() + (a + 1) * trials, 1);
    curve.push_back({deltas[a], static_cast<double>(hits) /
                                    static_cast<double>(trials)});
  }
  return curve;
}

}  // namespace rankbench::experiments

#endif  // RANKBENCH_EXPERIMENTS_HPP_
