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

// Global evaluation scores f(model, ground truth) -> real.

#ifndef RANKBENCH_METRICS_HPP_
#define RANKBENCH_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankbench/data.hpp"
#include "rankbench/error.hpp"
#include "rankbench/text.hpp"

namespace rankbench {

enum class Metric {
  kAccuracy,
  kF1,
  kRocAuc,
  kAveragePrecision,
  kMeanAbsoluteError,
  kEditDistance,
  kWordErrorRate,
  kChrF,
};

struct MetricInfo {
  Metric metric;
  std::string_view name;
  bool higher_is_better;
};

inline constexpr MetricInfo kMetricInfo[] = {
    {Metric::kAccuracy, "accuracy", true},
    {Metric::kF1, "f1", true},
    {Metric::kRocAuc, "roc_auc", true},
    {Metric::kAveragePrecision, "average_precision", true},
    {Metric::kMeanAbsoluteError, "mae", false},
    {Metric::kEditDistance, "edit_distance", false},
    {Metric::kWordErrorRate, "wer", false},
    {Metric::kChrF, "chrf", true},
};

inline const MetricInfo& Info(Metric m) {
  return kMetricInfo[static_cast<int>(m)];
}

// Accepts the canonical names above plus a few common aliases.
inline Metric ParseMetric(std::string_view name) {
  for (const MetricInfo& info : kMetricInfo) {
    if (info.name == name) return info.metric;
  }
  if (name == "acc") return Metric::kAccuracy;
  if (name == "auc") return Metric::kRocAuc;
  if (name == "ap") return Metric::kAveragePrecision;
  if (name == "ed") return Metric::kEditDistance;
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

namespace internal {

inline void RequireCategorical(const GroundTruth& truth, std::string_view m) {
  if (!truth.kind().categorical()) {
    throw ValidationError(std::string(m) + " requires a categorical dataset");
  }
}

inline void RequireBinary(const GroundTruth& truth, std::string_view m) {
  if (truth.kind().type() != TaskType::kBinary) {
    throw ValidationError(std::string(m) + " requires a binary dataset");
  }
}

inline void RequireText(const GroundTruth& truth, std::string_view m) {
  if (truth.kind().type() != TaskType::kText) {
    throw ValidationError(std::string(m) + " requires a text dataset");
  }
}

inline void RequireNonEmpty(const GroundTruth& truth) {
  if (truth.size() == 0) throw UndefinedMetricError("empty dataset");
}

inline std::vector<double> PositiveScores(const PredictionSet& preds,
                                          const GroundTruth& truth) {
  std::vector<double> scores;
  scores.reserve(truth.size());
  for (const Output* out : AlignOutputs(preds, truth)) {
    scores.push_back(PositiveScore(*out, truth.kind()));
  }
  return scores;
}

inline const std::string& TextOf(const Output& out) {
  const auto* s = std::get_if<std::string>(&out);
  if (s == nullptr) throw ValidationError("expected a text output");
  return *s;
}

}  // namespace internal

inline double Accuracy(const PredictionSet& preds, const GroundTruth& truth) {
  internal::RequireCategorical(truth, "accuracy");
  internal::RequireNonEmpty(truth);
  const auto outputs = AlignOutputs(preds, truth);
  size_t hits = 0;
  for (size_t i = 0; i < outputs.size(); ++i) {
    hits += HardLabel(*outputs[i], truth.kind()) == truth.LabelAt(i);
  }
  return static_cast<double>(hits) / static_cast<double>(outputs.size());
}

enum class F1Average { kBinary, kMacro };

// F1 over hardened labels. Binary averaging scores class 1 only; macro
// averages per-class F1 over all k classes. A class whose precision and
// recall are both zero (or undefined) contributes 0.
inline double F1(const PredictionSet& preds, const GroundTruth& truth,
                 F1Average average) {
  internal::RequireCategorical(truth, "f1");
  internal::RequireNonEmpty(truth);
  if (average == F1Average::kBinary &&
      truth.kind().type() != TaskType::kBinary) {
    throw ValidationError("binary F1 requires a binary dataset");
  }
  const int k = truth.kind().num_classes();
  std::vector<std::int64_t> tp(k), fp(k), fn(k);
  const auto outputs = AlignOutputs(preds, truth);
  for (size_t i = 0; i < outputs.size(); ++i) {
    const int predicted = HardLabel(*outputs[i], truth.kind());
    const int actual = truth.LabelAt(i);
    if (predicted == actual) {
      ++tp[actual];
    } else {
      ++fp[predicted];
      ++fn[actual];
    }
  }
  auto class_f1 = [&](int c) {
    const auto denom = 2 * tp[c] + fp[c] + fn[c];
    return denom == 0 ? 0.0 : 2.0 * tp[c] / static_cast<double>(denom);
  };
  if (average == F1Average::kBinary) return class_f1(1);
  double total = 0.0;
  for (int c = 0; c < k; ++c) total += class_f1(c);
  return total / k;
}

// Binary datasets default to binary averaging, multi-class to macro.
inline double F1(const PredictionSet& preds, const GroundTruth& truth) {
  return F1(preds, truth,
            truth.kind().type() == TaskType::kBinary ? F1Average::kBinary
                                                     : F1Average::kMacro);
}

// Mann-Whitney form of ROC AUC: the probability that a random positive
// outscores a random negative, counting equal scores as one half. Computed
// from mid-ranks in O(n log n).
inline double RocAuc(const PredictionSet& preds, const GroundTruth& truth) {
  internal::RequireBinary(truth, "roc_auc");
  const std::vector<double> scores = internal::PositiveScores(preds, truth);
  const size_t n = scores.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  std::int64_t positives = 0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1 .. j share the mid-rank (i + 1 + j) / 2.
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t t = i; t < j; ++t) {
      if (truth.LabelAt(order[t]) == 1) {
        positive_rank_sum += mid_rank;
        ++positives;
      }
    }
    i = j;
  }
  const auto negatives = static_cast<std::int64_t>(n) - positives;
  if (positives == 0 || negatives == 0) {
    throw UndefinedMetricError(
        "roc_auc is undefined when the ground truth has a single class");
  }
  const double u = positive_rank_sum -
                   0.5 * static_cast<double>(positives) * (positives + 1);
  return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

// Mean over positives of the precision at each positive's rank, ranking by
// descending score. Equal scores keep input order (stable sort).
inline double AveragePrecision(const PredictionSet& preds,
                               const GroundTruth& truth) {
  internal::RequireBinary(truth, "average_precision");
  const std::vector<double> scores = internal::PositiveScores(preds, truth);
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  double total = 0.0;
  std::int64_t hits = 0;
  for (size_t rank = 0; rank < order.size(); ++rank) {
    if (truth.LabelAt(order[rank]) == 1) {
      ++hits;
      total += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
  }
  if (hits == 0) {
    throw UndefinedMetricError(
        "average_precision is undefined without positive examples");
  }
  return total / static_cast<double>(hits);
}

// Mean |label - positive-class decision value|; lower is better.
inline double MeanAbsoluteError(const PredictionSet& preds,
                                const GroundTruth& truth) {
  internal::RequireBinary(truth, "mae");
  internal::RequireNonEmpty(truth);
  const std::vector<double> scores = internal::PositiveScores(preds, truth);
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!(scores[i] >= 0.0 && scores[i] <= 1.0)) {
      throw ValidationError("mae requires decision values in [0, 1]");
    }
    total += std::abs(truth.LabelAt(i) - scores[i]);
  }
  return total / static_cast<double>(scores.size());
}

// Levenshtein distance with unit costs over any equality-comparable tokens.
template <typename T>
size_t Levenshtein(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diagonal = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

// Character (code point) edit distance.
inline size_t CharEditDistance(std::string_view hyp, std::string_view ref) {
  const std::u32string a = text::DecodeUtf8(hyp);
  const std::u32string b = text::DecodeUtf8(ref);
  return Levenshtein<char32_t>(a, b);
}

// Word-level edit distance divided by the reference word count.
inline double SentenceWer(std::string_view hyp, std::string_view ref) {
  const auto ref_words = text::SplitWords(ref);
  if (ref_words.empty()) {
    throw UndefinedMetricError("wer is undefined for an empty reference");
  }
  const auto hyp_words = text::SplitWords(hyp);
  return static_cast<double>(
             Levenshtein<std::string_view>(hyp_words, ref_words)) /
         static_cast<double>(ref_words.size());
}

struct ChrFOptions {
  int max_order = 6;
  double beta = 2.0;
};

// Sentence-level chrF in [0, 100]. Whitespace is removed before character
// n-grams are extracted. Orders for which neither string has an n-gram are
// skipped; if every order is skipped (both strings blank) the score is 100.
inline double SentenceChrF(std::string_view hyp, std::string_view ref,
                           const ChrFOptions& options = {}) {
  const std::u32string h = text::StripWhitespace(hyp);
  const std::u32string r = text::StripWhitespace(ref);
  const double beta2 = options.beta * options.beta;
  double f_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= options.max_order; ++n) {
    const size_t hyp_count = h.size() >= static_cast<size_t>(n)
                                 ? h.size() - n + 1
                                 : 0;
    const size_t ref_count = r.size() >= static_cast<size_t>(n)
                                 ? r.size() - n + 1
                                 : 0;
    if (hyp_count == 0 && ref_count == 0) continue;
    ++orders;
    if (hyp_count == 0 || ref_count == 0) continue;
    std::map<std::u32string_view, std::int64_t> ref_grams;
    const std::u32string_view rv(r);
    const std::u32string_view hv(h);
    for (size_t i = 0; i < ref_count; ++i) ++ref_grams[rv.substr(i, n)];
    std::int64_t matches = 0;
    for (size_t i = 0; i < hyp_count; ++i) {
      auto it = ref_grams.find(hv.substr(i, n));
      if (it != ref_grams.end() && it->second > 0) {
        --it->second;
        ++matches;
      }
    }
    const double precision =
        static_cast<double>(matches) / static_cast<double>(hyp_count);
    const double recall =
        static_cast<double>(matches) / static_cast<double>(ref_count);
    const double denom = beta2 * precision + recall;
    if (denom > 0.0) f_sum += (1.0 + beta2) * precision * recall / denom;
  }
  if (orders == 0) return 100.0;
  return 100.0 * f_sum / orders;
}

namespace internal {

template <typename PerExample>
double MeanOverTexts(const PredictionSet& preds, const GroundTruth& truth,
                     std::string_view name, PerExample per_example) {
  RequireText(truth, name);
  RequireNonEmpty(truth);
  const auto outputs = AlignOutputs(preds, truth);
  double total = 0.0;
  for (size_t i = 0; i < outputs.size(); ++i) {
    total += per_example(TextOf(*outputs[i]), truth.TextAt(i));
  }
  return total / static_cast<double>(outputs.size());
}

}  // namespace internal

inline double EditDistance(const PredictionSet& preds,
                           const GroundTruth& truth) {
  return internal::MeanOverTexts(
      preds, truth, "edit_distance",
      [](const std::string& h, const std::string& r) {
        return static_cast<double>(CharEditDistance(h, r));
      });
}

inline double WordErrorRate(const PredictionSet& preds,
                            const GroundTruth& truth) {
  return internal::MeanOverTexts(
      preds, truth, "wer", [](const std::string& h, const std::string& r) {
        return SentenceWer(h, r);
      });
}

inline double ChrF(const PredictionSet& preds, const GroundTruth& truth,
                   const ChrFOptions& options = {}) {
  return internal::MeanOverTexts(
      preds, truth, "chrf", [&](const std::string& h, const std::string& r) {
        return SentenceChrF(h, r, options);
      });
}

inline double Evaluate(Metric metric, const PredictionSet& preds,
                       const GroundTruth& truth) {
  switch (metric) {
    case Metric::kAccuracy:
      return Accuracy(preds, truth);
    case Metric::kF1:
      return F1(preds, truth);
    case Metric::kRocAuc:
      return RocAuc(preds, truth);
    case Metric::kAveragePrecision:
      return AveragePrecision(preds, truth);
    case Metric::kMeanAbsoluteError:
      return MeanAbsoluteError(preds, truth);
    case Metric::kEditDistance:
      return EditDistance(preds, truth);
    case Metric::kWordErrorRate:
      return WordErrorRate(preds, truth);
    case Metric::kChrF:
      return ChrF(preds, truth);
  }
  throw ValidationError("unknown metric");
}

// One metric's scores for a list of models.
struct MetricReport {
  std::string metric;
  bool higher_is_better = true;
  std::vector<std::string> models;
  std::vector<double> scores;
};

inline MetricReport Evaluate(Metric metric,
                             std::span<const PredictionSet> models,
                             const GroundTruth& truth) {
  MetricReport report{std::string(Info(metric).name),
                      Info(metric).higher_is_better,
                      {},
                      {}};
  for (const PredictionSet& p : models) {
    report.models.push_back(p.model());
    report.scores.push_back(Evaluate(metric, p, truth));
  }
  return report;
}

// Metrics that make sense for a dataset kind, in display order.
inline std::vector<Metric> DefaultMetrics(const DatasetKind& kind) {
  switch (kind.type()) {
    case TaskType::kBinary:
      return {Metric::kAccuracy, Metric::kF1, Metric::kRocAuc,
              Metric::kAveragePrecision, Metric::kMeanAbsoluteError};
    case TaskType::kMultiClass:
      return {Metric::kAccuracy, Metric::kF1};
    case TaskType::kText:
      return {Metric::kEditDistance, Metric::kWordErrorRate, Metric::kChrF};
  }
  return {};
}

}  // namespace rankbench

#endif  // RANKBENCH_METRICS_HPP_
