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

#ifndef RANKBENCH_PARALLEL_HPP_
#define RANKBENCH_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rankbench {

// Calls fn(i) for every i in [0, count) on up to `threads` threads. Work is
// handed out dynamically, so fn must only write to per-index state for the
// result to be independent of scheduling. The first exception is rethrown.
template <typename Fn>
void ParallelFor(size_t count, int threads, Fn&& fn) {
  const size_t workers =
      std::min(count, static_cast<size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
        next = count;
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rankbench

#endif  // RANKBENCH_PARALLEL_HPP_
