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

#ifndef ANONREC_TESTS_TEST_UTIL_H_
#define ANONREC_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "anonrec/error.h"
#include "anonrec/random.h"
#include "anonrec/ratings.h"
#include "oracle/brute_force.h"

namespace anonrec::testing {

// Four users, three items:
//   u0: i0=5 i1=3
//   u1: i0=4 i2=2
//   u2: i1=4 i2=5
//   u3: i0=1 i1=2 i2=4
inline SparseRatingMatrix Toy() {
  const std::vector<RatingTriple> t = {{0, 0, 5}, {0, 1, 3}, {1, 0, 4}, {1, 2, 2},
                                       {2, 1, 4}, {2, 2, 5}, {3, 0, 1}, {3, 1, 2},
                                       {3, 2, 4}};
  return BuildMatrix(t, 4, 3);
}

// Each cell rated with probability `density`, integer values on 1..5.
inline SparseRatingMatrix RandomMatrix(std::uint64_t seed, std::size_t n, std::size_t m,
                                       double density = 0.6) {
  Rng rng(seed);
  std::vector<RatingTriple> t;
  const auto threshold = static_cast<std::uint64_t>(density * 1000);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < m; ++i) {
      if (rng.Below(1000) < threshold) {
        t.push_back({static_cast<UserIndex>(u), static_cast<ItemIndex>(i),
                     static_cast<double>(1 + rng.Below(5))});
      }
    }
  }
  return BuildMatrix(t, n, m);
}

inline oracle::Dense ToDense(const SparseRatingMatrix& matrix) {
  oracle::Dense d(matrix.num_users(), std::vector<oracle::Cell>(matrix.num_items()));
  for (const RatingTriple& t : matrix.Triples()) d[t.user][t.item] = t.value;
  return d;
}

inline std::vector<oracle::Cell> ToDenseRow(RatingRowView row, std::size_t m) {
  std::vector<oracle::Cell> d(m);
  for (const RatingEntry& e : row) d[e.item] = e.value;
  return d;
}

}  // namespace anonrec::testing

#define EXPECT_ANONREC_ERROR(stmt, expected_code)                          \
  do {                                                                     \
    try {                                                                  \
      stmt;                                                                \
      ADD_FAILURE() << "expected " << ::anonrec::ErrorCodeName(expected_code); \
    } catch (const ::anonrec::Error& e) {                                  \
      EXPECT_EQ(e.code(), expected_code) << e.what();                      \
    }                                                                      \
  } while (false)

#endif  // ANONREC_TESTS_TEST_UTIL_H_
