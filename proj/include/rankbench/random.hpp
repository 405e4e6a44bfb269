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

// Seeded pseudo-random numbers with a fixed algorithm identity.
//
// The engine is std::mt19937_64, whose output sequence is pinned by the C++
// standard. The standard distributions are not (their algorithms are
// implementation-defined), so the uniform mappings below are written out to
// keep every seeded result bit-identical across toolchains.

#ifndef RANKBENCH_RANDOM_HPP_
#define RANKBENCH_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rankbench {

// SplitMix64 finalizer.
constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent seed from a base seed and a list of stream indices
// (trial number, resample number, ...). Order of the indices matters.
constexpr std::uint64_t MixSeed(std::uint64_t base,
                                std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = SplitMix64(base);
  for (std::uint64_t v : path) h = SplitMix64(h ^ SplitMix64(v + 1));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, bound); bound must be positive. Lemire's
  // multiply-shift with rejection, so there is no modulo bias.
  std::uint64_t Below(std::uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(NextU64()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(NextU64()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rankbench

#endif  // RANKBENCH_RANDOM_HPP_
