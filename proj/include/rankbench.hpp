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

#ifndef RANKBENCH_RANKBENCH_HPP_
#define RANKBENCH_RANKBENCH_HPP_

#include "rankbench/advise.hpp"
#include "rankbench/bradley_terry.hpp"
#include "rankbench/data.hpp"
#include "rankbench/error.hpp"
#include "rankbench/experiments.hpp"
#include "rankbench/io.hpp"
#include "rankbench/judge.hpp"
#include "rankbench/metrics.hpp"
#include "rankbench/parallel.hpp"
#include "rankbench/random.hpp"
#include "rankbench/rank_stats.hpp"
#include "rankbench/table.hpp"
#include "rankbench/text.hpp"
#include "rankbench/transforms.hpp"

namespace rankbench {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace rankbench

#endif  // RANKBENCH_RANKBENCH_HPP_
