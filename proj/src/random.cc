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

#include "anonrec/random.h"

#include <numeric>

#include "anonrec/error.h"

namespace anonrec {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = Mix64(master);
  for (std::uint64_t step : path) h = Mix64(h ^ Mix64(step + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t Rng::Below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::Below(0)");
  // Rejection on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::size_t> Rng::Sample(std::size_t population, std::size_t count) {
  if (count > population) {
    throw Error(ErrorCode::kInvalidArgument, "sample larger than population");
  }
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(Below(population - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace anonrec
