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

#include "anonrec/split.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "anonrec/error.h"
#include "anonrec/random.h"

namespace anonrec {

namespace {

void CheckFraction(double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "fraction " + std::to_string(fraction) + " not in (0, 1)");
  }
}

SparseRatingMatrix Rebuild(const SparseRatingMatrix& like,
                           const std::vector<RatingTriple>& triples) {
  return SparseRatingMatrix::Build(triples, like.num_users(), like.num_items(),
                                   like.scale());
}

// Partitions `row` by the positions in `picked`; both outputs keep item order.
InputSplit PartitionRow(RatingRowView row, const std::vector<std::size_t>& picked) {
  std::vector<bool> in_input(row.size(), false);
  for (std::size_t p : picked) in_input[p] = true;
  InputSplit split;
  split.input.reserve(picked.size());
  split.holdout.reserve(row.size() - picked.size());
  for (std::size_t p = 0; p < row.size(); ++p) {
    (in_input[p] ? split.input : split.holdout).push_back(row[p]);
  }
  return split;
}

}  // namespace

std::size_t RoundedShare(double fraction, std::size_t count) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 0.5));
}

RatingHoldout SplitRatingHoldout(const SparseRatingMatrix& matrix,
                                 const SplitSpec& spec) {
  if (spec.kind != SplitKind::kRatingHoldout) {
    throw Error(ErrorCode::kInvalidArgument, "expected a rating-holdout spec");
  }
  CheckFraction(spec.holdout_fraction);
  const std::vector<RatingTriple> all = matrix.Triples();
  const std::size_t test_size = RoundedShare(spec.holdout_fraction, all.size());

  Rng rng(spec.seed);
  std::vector<bool> held(all.size(), false);
  for (std::size_t p : rng.Sample(all.size(), test_size)) held[p] = true;

  std::vector<RatingTriple> train;
  RatingHoldout out;
  train.reserve(all.size() - test_size);
  out.test.reserve(test_size);
  for (std::size_t p = 0; p < all.size(); ++p) {
    (held[p] ? out.test : train).push_back(all[p]);
  }
  out.train = Rebuild(matrix, train);
  return out;
}

std::vector<RatingHoldout> SplitRatingFolds(const SparseRatingMatrix& matrix,
                                            std::size_t folds,
                                            std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::kInvalidArgument, "folds must be >= 2");
  const std::vector<RatingTriple> all = matrix.Triples();
  std::vector<std::size_t> order(all.size());
  for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));

  std::vector<std::size_t> fold_of(all.size());
  for (std::size_t r = 0; r < order.size(); ++r) fold_of[order[r]] = r % folds;

  std::vector<RatingHoldout> out(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<RatingTriple> train;
    for (std::size_t p = 0; p < all.size(); ++p) {
      (fold_of[p] == f ? out[f].test : train).push_back(all[p]);
    }
    out[f].train = Rebuild(matrix, train);
  }
  return out;
}

UserHoldout SplitUserHoldout(const SparseRatingMatrix& matrix,
                             const SplitSpec& spec) {
  if (spec.kind != SplitKind::kUserHoldout) {
    throw Error(ErrorCode::kInvalidArgument, "expected a user-holdout spec");
  }
  CheckFraction(spec.holdout_fraction);
  const std::size_t n = matrix.num_users();
  const std::size_t test_size = RoundedShare(spec.holdout_fraction, n);

  Rng rng(spec.seed);
  std::vector<bool> held(n, false);
  for (std::size_t u : rng.Sample(n, test_size)) held[u] = true;

  UserHoldout out;
  std::vector<RatingRow> train_rows;
  for (std::size_t u = 0; u < n; ++u) {
    const RatingRowView row = matrix.row(static_cast<UserIndex>(u));
    if (held[u]) {
      out.test_users.push_back({static_cast<UserIndex>(u), RatingRow(row.begin(), row.end())});
    } else {
      out.train_users.push_back(static_cast<UserIndex>(u));
      train_rows.emplace_back(row.begin(), row.end());
    }
  }
  out.train = SparseRatingMatrix::FromRows(train_rows, matrix.num_items(),
                                           matrix.scale());
  return out;
}

InputSplit SplitPredictionInput(RatingRowView row, std::size_t count,
                                std::uint64_t seed) {
  if (row.empty() || count >= row.size()) {
    throw Error(ErrorCode::kInsufficientRatings,
                std::to_string(row.size()) + " ratings cannot supply " +
                    std::to_string(count) + " inputs and a nonempty holdout");
  }
  Rng rng(seed);
  return PartitionRow(row, rng.Sample(row.size(), count));
}

InputSplit SplitPredictionInputFraction(RatingRowView row, double fraction,
                                        std::uint64_t seed) {
  CheckFraction(fraction);
  if (row.empty()) {
    throw Error(ErrorCode::kInsufficientRatings, "empty rating row");
  }
  Rng rng(seed);
  return PartitionRow(row, rng.Sample(row.size(), RoundedShare(fraction, row.size())));
}

}  // namespace anonrec
