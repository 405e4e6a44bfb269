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

// Output manipulations and synthetic model generators: binarization,
// penalization of mistakes, tie injection, random binary models and pairs
// of models separated by a fixed score gap.

#ifndef RANKBENCH_TRANSFORMS_HPP_
#define RANKBENCH_TRANSFORMS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rankbench/data.hpp"
#include "rankbench/error.hpp"
#include "rankbench/random.hpp"

namespace rankbench {

namespace internal {

inline Output OneHotLike(const Output& out, const DatasetKind& kind) {
  const int label = HardLabel(out, kind);
  if (std::holds_alternative<Label>(out)) return out;
  if (kind.type() == TaskType::kBinary) {
    return Scores{{static_cast<double>(label)}};
  }
  Scores one_hot{std::vector<double>(kind.num_classes(), 0.0)};
  one_hot.values[label] = 1.0;
  return one_hot;
}

inline void RequireCategorical(const PredictionSet& preds, const char* what) {
  if (!preds.kind().categorical()) {
    throw ValidationError(std::string(what) +
                          " requires categorical predictions");
  }
}

}  // namespace internal

// One-hot at the hardened label; binary decision values round half up.
inline PredictionSet Binarize(const PredictionSet& preds) {
  internal::RequireCategorical(preds, "binarize");
  PredictionSet out(preds.model(), preds.kind());
  for (size_t i = 0; i < preds.size(); ++i) {
    out.Add(preds.ids()[i],
            internal::OneHotLike(preds.outputs()[i], preds.kind()));
  }
  return out;
}

// Makes every mistake maximally confident; correct outputs are untouched.
inline PredictionSet PenalizeClass(const PredictionSet& preds,
                                   const GroundTruth& truth) {
  internal::RequireCategorical(preds, "penalize-class");
  CheckCoverage(preds, truth);
  PredictionSet out(preds.model(), preds.kind());
  for (size_t i = 0; i < preds.size(); ++i) {
    const Output& o = preds.outputs()[i];
    const auto* ref = std::get_if<int>(&truth.At(preds.ids()[i]));
    const bool wrong = HardLabel(o, preds.kind()) != *ref;
    out.Add(preds.ids()[i], wrong ? internal::OneHotLike(o, preds.kind()) : o);
  }
  return out;
}

struct TextPenalty {
  double fraction = 0.05;
  int junk_length = 100;
  std::uint64_t seed = 42;
};

// Number of outputs a penalty touches: ceil(fraction * n).
inline size_t PenalizedCount(double fraction, size_t n) {
  // The epsilon keeps products like 0.07 * 100 from rounding up to 8.
  const double raw = fraction * static_cast<double>(n);
  return std::min(n, static_cast<size_t>(std::ceil(raw - 1e-9)));
}

// Appends `junk_length` random lowercase letters to ceil(fraction * n)
// outputs chosen uniformly without replacement.
inline PredictionSet PenalizeText(const PredictionSet& preds,
                                  const TextPenalty& penalty) {
  if (preds.kind().type() != TaskType::kText) {
    throw ValidationError("penalize-text requires text predictions");
  }
  if (!(penalty.fraction >= 0.0 && penalty.fraction <= 1.0)) {
    throw ValidationError("penalty fraction must be in [0, 1]");
  }
  if (penalty.junk_length <= 0) {
    throw ValidationError("junk length must be positive");
  }
  const size_t n = preds.size();
  const size_t chosen = PenalizedCount(penalty.fraction, n);
  Rng rng(penalty.seed);
  // Partial Fisher-Yates: the first `chosen` slots become the sample.
  std::vector<size_t> index(n);
  std::iota(index.begin(), index.end(), 0);
  for (size_t k = 0; k < chosen; ++k) {
    std::swap(index[k], index[k + rng.Below(n - k)]);
  }
  std::vector<std::string> texts;
  texts.reserve(n);
  for (const Output& o : preds.outputs()) texts.push_back(std::get<std::string>(o));
  for (size_t k = 0; k < chosen; ++k) {
    std::string& t = texts[index[k]];
    for (int c = 0; c < penalty.junk_length; ++c) {
      t.push_back(static_cast<char>('a' + rng.Below(26)));
    }
  }
  PredictionSet out(preds.model(), preds.kind());
  for (size_t i = 0; i < n; ++i) out.Add(preds.ids()[i], std::move(texts[i]));
  return out;
}

// Replaces each record by a tie independently with probability q.
inline ComparisonLog InjectTies(const ComparisonLog& log, double q,
                                std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ValidationError("tie probability must be in [0, 1]");
  }
  ComparisonLog out = log;
  Rng rng(seed);
  for (auto& r : out.mutable_records()) {
    if (rng.Bernoulli(q)) r.outcome = Outcome::kTie;
  }
  return out;
}

struct SyntheticSet {
  std::vector<PredictionSet> models;
  GroundTruth truth;
};

inline std::string ExampleId(size_t i) { return "e" + std::to_string(i + 1); }

// `count` models and a ground truth, all i.i.d. uniform binary sequences.
// The truth uses stream 0 of `seed`, model k stream k + 1.
inline SyntheticSet RandomBinaryModels(int count, int n, std::uint64_t seed) {
  if (count < 2) throw ValidationError("need at least 2 random models");
  if (n < 1) throw ValidationError("need at least 1 example");
  SyntheticSet set{{}, GroundTruth(DatasetKind::Binary())};
  Rng truth_rng(MixSeed(seed, {0}));
  for (int i = 0; i < n; ++i) {
    set.truth.Add(ExampleId(i), static_cast<int>(truth_rng.Below(2)));
  }
  for (int k = 0; k < count; ++k) {
    Rng rng(MixSeed(seed, {static_cast<std::uint64_t>(k) + 1}));
    PredictionSet p("model_" + std::to_string(k + 1), DatasetKind::Binary());
    for (int i = 0; i < n; ++i) {
      p.Add(ExampleId(i), Scores{{static_cast<double>(rng.Below(2))}});
    }
    set.models.push_back(std::move(p));
  }
  return set;
}

inline double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Two binary models over an all-positive truth:
//   a = clamp01(0.5 + e_A),  b = clamp01(0.5 - gap + e_B),
// with e ~ U(-noise, noise) i.i.d. A is closer to the truth by `gap` on
// average. With noise 0.25 the per-example win probability of A rises
// from 1/2 at gap 0 to 1 at gap 0.5.
inline SyntheticSet GappedPair(double gap, int n, std::uint64_t seed,
                               double noise = 0.25) {
  if (!(gap >= 0.0 && gap <= 0.5)) {
    throw ValidationError("score gap must be in [0, 0.5]");
  }
  if (!(noise > 0.0 && noise <= 0.5)) {
    throw ValidationError("noise half-width must be in (0, 0.5]");
  }
  if (n < 1) throw ValidationError("need at least 1 example");
  SyntheticSet set{{}, GroundTruth(DatasetKind::Binary())};
  PredictionSet a("A", DatasetKind::Binary());
  PredictionSet b("B", DatasetKind::Binary());
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const std::string id = ExampleId(i);
    set.truth.Add(id, 1);
    const double score_a = Clamp01(0.5 + rng.Uniform(-noise, noise));
    const double score_b = Clamp01(0.5 - gap + rng.Uniform(-noise, noise));
    a.Add(id, Scores{{score_a}});
    b.Add(id, Scores{{score_b}});
  }
  set.models.push_back(std::move(a));
  set.models.push_back(std::move(b));
  return set;
}

}  // namespace rankbench

#endif  // RANKBENCH_TRANSFORMS_HPP_
