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

#ifndef ANONREC_SPLIT_H_
#define ANONREC_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anonrec/ratings.h"

namespace anonrec {

enum class SplitKind { kRatingHoldout, kUserHoldout };

struct SplitSpec {
  SplitKind kind = SplitKind::kRatingHoldout;
  double holdout_fraction = 0.2;  // strictly inside (0, 1)
  std::uint64_t seed = 0;
};

// round-half-up(fraction * count).
std::size_t RoundedShare(double fraction, std::size_t count);

struct RatingHoldout {
  SparseRatingMatrix train;  // same n x m as the input
  std::vector<RatingTriple> test;  // (user, item) order
};

// Uniform random subset of RoundedShare(fraction, |Omega|) entries is held out.
RatingHoldout SplitRatingHoldout(const SparseRatingMatrix& matrix,
                                 const SplitSpec& spec);

// Partitions Omega into `folds` near-equal random folds; element f holds fold
// f out. Used by the optional cross-validation mode.
std::vector<RatingHoldout> SplitRatingFolds(const SparseRatingMatrix& matrix,
                                            std::size_t folds,
                                            std::uint64_t seed);

struct HeldOutUser {
  UserIndex user = 0;  // index in the input matrix
  RatingRow row;
};

struct UserHoldout {
  // Re-indexed over the retained raters only: row r is input user
  // train_users[r].
  SparseRatingMatrix train;
  std::vector<UserIndex> train_users;
  std::vector<HeldOutUser> test_users;  // ascending by user
};

UserHoldout SplitUserHoldout(const SparseRatingMatrix& matrix,
                             const SplitSpec& spec);

struct InputSplit {
  RatingRow input;
  RatingRow holdout;
};

// Draws exactly `count` ratings of `row` as prediction input; the rest is the
// holdout. Throws InsufficientRatings when count >= |row|, since the holdout
// must stay nonempty.
InputSplit SplitPredictionInput(RatingRowView row, std::size_t count,
                                std::uint64_t seed);

// Draws RoundedShare(fraction, |row|) ratings as input. Only an empty row is
// rejected; the holdout may be empty.
InputSplit SplitPredictionInputFraction(RatingRowView row, double fraction,
                                        std::uint64_t seed);

}  // namespace anonrec

#endif  // ANONREC_SPLIT_H_
