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

#include "anonrec/predictor.h"

#include <gtest/gtest.h>

#include <memory>

#include "anonrec/anonymizer.h"
#include "oracle/brute_force.h"
#include "test_util.h"

namespace anonrec {
namespace {

using ::anonrec::testing::RandomMatrix;
using ::anonrec::testing::ToDense;
using ::anonrec::testing::ToDenseRow;
using ::anonrec::testing::Toy;

std::shared_ptr<const SparseRatingMatrix> Shared(SparseRatingMatrix m) {
  return std::make_shared<const SparseRatingMatrix>(std::move(m));
}
std::shared_ptr<const AnonymizedMatrix> Shared(AnonymizedMatrix m) {
  return std::make_shared<const AnonymizedMatrix>(std::move(m));
}

TEST(ModelNameTest, RoundTrip) {
  for (ModelId id : {ModelId::kCase1Reg, ModelId::kCase1aUr, ModelId::kCase1aAi,
                     ModelId::kCase2Ur, ModelId::kCase2aUr, ModelId::kBaseline}) {
    EXPECT_EQ(ParseModelName(ModelName(id)), id);
  }
  EXPECT_EQ(ModelName(ModelId::kCase1aAi), "Case1A/AI");
  EXPECT_FALSE(ParseModelName("Case3").has_value());
}

TEST(PredictWithRatingsTest, FreshUserOnToy) {
  const ItemSimilarityMatrix s = ComputeItemSimilarity(Toy());
  const RatingRow input = {{0, 5.0}};
  const PredictedRating p = PredictWithRatings(s, input, 2, {});
  EXPECT_NEAR(p.value, 2.0, 1e-12);
  EXPECT_EQ(p.fallback, FallbackLevel::kFull);
}

TEST(PredictWithRatingsTest, EmptyInputFallsBackToItemMean) {
  const ItemSimilarityMatrix s = ComputeItemSimilarity(Toy());
  const PredictedRating p = PredictWithRatings(s, {}, 1, {});
  EXPECT_DOUBLE_EQ(p.value, 3.0);
  EXPECT_EQ(p.fallback, FallbackLevel::kItemMean);
}

TEST(PredictWithRatingsTest, SingleFullSimilarity) {
  ItemSimilarityMatrix s(2, SimilaritySource::kRaw, {3.0, 2.0});
  s.Set(0, 1, 1.0, true);
  const RatingRow input = {{1, 2.5}};
  EXPECT_DOUBLE_EQ(PredictWithRatings(s, input, 0, {}).value, 3.5);
  const RatingRow far = {{1, 5.0}};
  EXPECT_DOUBLE_EQ(PredictWithRatings(s, far, 0, {}).value, 5.0);  // 6 clamped
}

TEST(PredictWithRatingsTest, UndefinedTargetMean) {
  ItemSimilarityMatrix s(3, SimilaritySource::kRaw, {2.0, std::nullopt, 4.0});
  const RatingRow input = {{0, 5.0}};
  const PredictedRating p = PredictWithRatings(s, input, 1, {});
  EXPECT_DOUBLE_EQ(p.value, 3.0);
  EXPECT_EQ(p.fallback, FallbackLevel::kGlobalMean);
  ItemSimilarityMatrix none(1, SimilaritySource::kRaw, {std::nullopt});
  EXPECT_DOUBLE_EQ(PredictWithRatings(none, {}, 0, {}).value, 3.0);  // midpoint
}

TEST(PredictWithRatingsTest, UnknownInputMeansAreDropped) {
  ItemSimilarityMatrix s(3, SimilaritySource::kRaw, {3.0, std::nullopt, 2.0});
  s.Set(0, 1, 0.9, true);
  s.Set(0, 2, 0.5, true);
  const RatingRow input = {{1, 5.0}, {2, 3.0}};
  EXPECT_DOUBLE_EQ(PredictWithRatings(s, input, 0, {}).value, 4.0);
}

TEST(PredictWithRatingsTest, RejectsBadItems) {
  const ItemSimilarityMatrix s = ComputeItemSimilarity(Toy());
  EXPECT_ANONREC_ERROR(PredictWithRatings(s, {}, 3, {}), ErrorCode::kIndexOutOfRange);
  const RatingRow input = {{7, 5.0}};
  EXPECT_ANONREC_ERROR(PredictWithRatings(s, input, 0, {}), ErrorCode::kIndexOutOfRange);
}

TEST(PredictWithRatingsTest, NeutralItemInsensitivity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SparseRatingMatrix r = RandomMatrix(seed, 12, 6);
    ItemSimilarityMatrix s = ComputeItemSimilarity(r);
    const ItemIndex target = static_cast<ItemIndex>(seed % 6);
    const ItemIndex neutral = (target + 1) % 6;
    s.Set(target, neutral, 0.0, false);
    RatingRow input;
    for (ItemIndex i = 0; i < 6; ++i) {
      if (i != neutral && i != target && (i + seed) % 2 == 0) input.push_back({i, 4.0});
    }
    const PredictedRating before = PredictWithRatings(s, input, target, {});
    input.push_back({neutral, 1.0});
    std::sort(input.begin(), input.end(),
              [](auto& a, auto& b) { return a.item < b.item; });
    EXPECT_DOUBLE_EQ(PredictWithRatings(s, input, target, {}).value, before.value);
  }
}

TEST(PredictWithRatingsTest, Dominance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SparseRatingMatrix r = RandomMatrix(seed + 7, 15, 6);
    ItemSimilarityMatrix s = ComputeItemSimilarity(r);
    const ItemIndex target = static_cast<ItemIndex>(seed % 6);
    if (!s.item_means()[target]) continue;
    RatingRow input;
    for (ItemIndex i = 0; i < 6; ++i) {
      if (i == target) continue;
      s.Set(target, i, std::abs(s.at(target, i)), s.defined(target, i));
      const double mean = s.item_means()[i].value_or(3.0);
      input.push_back({i, std::min(5.0, mean + 0.1 * static_cast<double>(i))});
    }
    EXPECT_GE(PredictWithRatings(s, input, target, {}).value,
              *s.item_means()[target] - 1e-12);
  }
}

TEST(TrainedModelTest, Case1RegOnToy) {
  const TrainedModel m = TrainedModel::Train(ModelId::kCase1Reg, Shared(Toy()));
  EXPECT_NEAR(m.Predict(UserIdentity{2}, 0).value, 3.4930614708903676113, 1e-12);
  const RatingRowView row = m.train()->row(2);
  EXPECT_EQ(PredictCase1Reg(m, 2, 0).value,
            PredictWithRatings(m.sims(), row, 0, m.scale()).value);
}

TEST(TrainedModelTest, BaselineOnToy) {
  const TrainedModel m = TrainedModel::Train(ModelId::kBaseline, Shared(Toy()));
  EXPECT_DOUBLE_EQ(m.Predict(NoInput{}, 1).value, 3.0);
  EXPECT_DOUBLE_EQ(PredictBaseline(m, 0).value, 10.0 / 3.0);
}

TEST(TrainedModelTest, SinglePrototypeIsItemMeanRow) {
  const Anonymization a = OkaAnonymize(Toy(), 4, 1);
  const TrainedModel m = TrainedModel::Train(ModelId::kCase1aAi, Shared(a.table));
  const RatingRow means_row = {{0, 10.0 / 3.0}, {1, 3.0}, {2, 11.0 / 3.0}};
  for (ItemIndex t = 0; t < 3; ++t) {
    EXPECT_NEAR(m.Predict(AnonymousIdentity{0}, t).value,
                PredictWithRatings(m.sims(), means_row, t, m.scale()).value, 1e-12);
  }
}

TEST(TrainedModelTest, AnonymizedAtKOneMatchesRaw) {
  const SparseRatingMatrix r = RandomMatrix(21, 30, 12, 0.4);
  const Anonymization a = OkaAnonymize(r, 1, 1);
  const TrainedModel reg = TrainedModel::Train(ModelId::kCase1Reg, Shared(r));
  const TrainedModel ai = TrainedModel::Train(ModelId::kCase1aAi, Shared(a.table));
  const TrainedModel ur = TrainedModel::Train(ModelId::kCase1aUr, Shared(a.table));
  for (UserIndex u = 0; u < 30; ++u) {
    for (ItemIndex i = 0; i < 12; ++i) {
      const double want = reg.Predict(UserIdentity{u}, i).value;
      EXPECT_NEAR(ai.Predict(AnonymousIdentity{a.sigma(u)}, i).value, want, 1e-9);
      const RatingRowView row = r.row(u);
      EXPECT_NEAR(ur.Predict(UserRatings{RatingRow(row.begin(), row.end())}, i).value,
                  want, 1e-9);
    }
  }
}

TEST(TrainedModelTest, EnforcesInputKinds) {
  const auto raw = Shared(Toy());
  const auto anon = Shared(OkaAnonymize(Toy(), 2, 1).table);
  const TrainedModel reg = TrainedModel::Train(ModelId::kCase1Reg, raw);
  EXPECT_ANONREC_ERROR(reg.Predict(NoInput{}, 0), ErrorCode::kModelInputMismatch);
  EXPECT_ANONREC_ERROR(reg.Predict(AnonymousIdentity{0}, 0), ErrorCode::kModelInputMismatch);
  const TrainedModel ur = TrainedModel::Train(ModelId::kCase2aUr, anon);
  EXPECT_ANONREC_ERROR(ur.Predict(UserIdentity{0}, 0), ErrorCode::kModelInputMismatch);
  const RatingRow bad = {{0, 9.0}};
  EXPECT_ANONREC_ERROR(ur.Predict(UserRatings{bad}, 1), ErrorCode::kRatingOutOfScale);
  const TrainedModel ai = TrainedModel::Train(ModelId::kCase1aAi, anon);
  EXPECT_ANONREC_ERROR(ai.Predict(AnonymousIdentity{2}, 0), ErrorCode::kIndexOutOfRange);
}

TEST(TrainedModelTest, RequiresMatchingTrainingInput) {
  auto raw_sims = std::make_shared<const ItemSimilarityMatrix>(ComputeItemSimilarity(Toy()));
  EXPECT_ANONREC_ERROR(TrainedModel(ModelId::kCase1aAi, raw_sims, nullptr, nullptr, {}),
                       ErrorCode::kInvalidArgument);
  auto anon = Shared(OkaAnonymize(Toy(), 2, 1).table);
  auto anon_sims = std::make_shared<const ItemSimilarityMatrix>(ComputeItemSimilarity(*anon));
  EXPECT_ANONREC_ERROR(TrainedModel(ModelId::kCase1aAi, anon_sims, nullptr, nullptr, {}),
                       ErrorCode::kMissingAnonymizedMatrix);
  EXPECT_ANONREC_ERROR(TrainedModel(ModelId::kCase1Reg, raw_sims, nullptr, nullptr, {}),
                       ErrorCode::kInvalidArgument);
}

// Every model against the dense oracle on small random problems.
TEST(TrainedModelTest, AllModelsMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.Below(5), m = 1 + rng.Below(5);
    const SparseRatingMatrix r = RandomMatrix(seed * 13 + 1, n, m, 0.5 + 0.1 * rng.Below(5));
    const std::size_t k = 1 + rng.Below(n);
    const Anonymization a = OkaAnonymize(r, k, seed);
    const auto raw = Shared(r);
    const auto anon = Shared(a.table);
    const oracle::Model raw_oracle = oracle::Fit(ToDense(r), std::vector<double>(n, 1.0), m);
    const oracle::Model anon_oracle = oracle::Fit(ToDense(a.table.prototypes), a.table.Weights(), m);

    RatingRow revealed;
    for (ItemIndex i = 0; i < m; ++i) {
      if (rng.Below(2)) revealed.push_back({i, static_cast<double>(1 + rng.Below(5))});
    }
    const auto revealed_dense = ToDenseRow(revealed, m);

    for (ItemIndex t = 0; t < m; ++t) {
      for (UserIndex u = 0; u < n; ++u) {
        EXPECT_NEAR(TrainedModel::Train(ModelId::kCase1Reg, raw).Predict(UserIdentity{u}, t).value,
                    oracle::Predict(raw_oracle, ToDenseRow(r.row(u), m), t, 1, 5), 1e-9);
        const AnonIndex id = a.sigma(u);
        EXPECT_NEAR(
            TrainedModel::Train(ModelId::kCase1aAi, anon).Predict(AnonymousIdentity{id}, t).value,
            oracle::Predict(anon_oracle, ToDenseRow(a.table.prototypes.row(id), m), t, 1, 5),
            1e-9);
      }
      for (ModelId id : {ModelId::kCase1aUr, ModelId::kCase2aUr}) {
        EXPECT_NEAR(TrainedModel::Train(id, anon).Predict(UserRatings{revealed}, t).value,
                    oracle::Predict(anon_oracle, revealed_dense, t, 1, 5), 1e-9);
      }
      EXPECT_NEAR(TrainedModel::Train(ModelId::kCase2Ur, raw).Predict(UserRatings{revealed}, t).value,
                  oracle::Predict(raw_oracle, revealed_dense, t, 1, 5), 1e-9);
      EXPECT_NEAR(TrainedModel::Train(ModelId::kBaseline, raw).Predict(NoInput{}, t).value,
                  oracle::Predict(raw_oracle, {}, t, 1, 5), 1e-9);
    }
  }
}

}  // namespace
}  // namespace anonrec
