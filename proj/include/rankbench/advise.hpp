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

#ifndef RANKBENCH_ADVISE_HPP_
#define RANKBENCH_ADVISE_HPP_

#include <string_view>

namespace rankbench {

enum class Recommendation { kPairwise, kGlobal };

inline std::string_view RecommendationName(Recommendation r) {
  return r == Recommendation::kPairwise ? "pairwise" : "global";
}

struct EvaluationTraits {
  // The quality measure is hard to pin down (e.g. free-form text).
  bool measure_hard_to_define = false;
  // Some models produce over-confident decision values.
  bool models_confident = false;
  // Model scores are relatively consistent rather than widely varying.
  bool scores_consistent = false;
};

// Pairwise comparisons when the measure is hard to define, or when scores
// vary widely and no model is over-confident; global scores otherwise.
inline Recommendation Advise(const EvaluationTraits& t) {
  if (t.measure_hard_to_define) return Recommendation::kPairwise;
  if (t.models_confident) return Recommendation::kGlobal;
  if (t.scores_consistent) return Recommendation::kGlobal;
  return Recommendation::kPairwise;
}

}  // namespace rankbench

#endif  // RANKBENCH_ADVISE_HPP_
