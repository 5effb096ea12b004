// Copyright 2026 The anonrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONREC_RANDOM_H_
#define ANONREC_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace anonrec {

// SplitMix64 finalizer. Used to derive independent stream seeds from a master
// seed so every randomized step is a pure function of (master seed, path).
std::uint64_t Mix64(std::uint64_t x);

// Folds a sequence of stream coordinates into a seed, e.g.
// DeriveSeed(master, {trial, 7, user}).
std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> path);

// Seeded generator whose output sequence is identical on every platform.
// The standard distributions are implementation-defined, so bounded draws and
// shuffles are done here instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound);

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // `count` distinct indices drawn uniformly from [0, population), in draw
  // order. Partial Fisher-Yates.
  std::vector<std::size_t> Sample(std::size_t population, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace anonrec

#endif  // ANONREC_RANDOM_H_
