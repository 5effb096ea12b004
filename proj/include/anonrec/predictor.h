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

#ifndef ANONREC_PREDICTOR_H_
#define ANONREC_PREDICTOR_H_

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "anonrec/anonymizer.h"
#include "anonrec/ratings.h"
#include "anonrec/similarity.h"

namespace anonrec {

// Rows of the model taxonomy: training input x prediction input.
enum class ModelId {
  kCase1Reg,   // raw R+, user identity
  kCase1aUr,   // anonymized R+, revealed ratings
  kCase1aAi,   // anonymized R+, anonymous identity
  kCase2Ur,    // raw R-, revealed ratings
  kCase2aUr,   // anonymized R-, revealed ratings
  kBaseline,   // any training input, no prediction input
};

std::string_view ModelName(ModelId id);  // "Case1/REG", "Case1A/UR", ...
std::optional<ModelId> ParseModelName(std::string_view name);

enum class FallbackLevel { kFull, kItemMean, kGlobalMean };

struct PredictedRating {
  double value = 0.0;  // clamped to the rating scale
  FallbackLevel fallback = FallbackLevel::kFull;
};

struct UserIdentity {
  UserIndex user = 0;
};
struct UserRatings {
  RatingRow row;  // the revealed items are the row's support
};
struct AnonymousIdentity {
  AnonIndex id = 0;
};
struct NoInput {};

using PredictionInput =
    std::variant<UserIdentity, UserRatings, AnonymousIdentity, NoInput>;

// mean_t + sum_l s_tl (r_l - mean_l) / sum_l |s_tl| over the revealed items l,
// clamped to `scale`. Items without a mean are skipped. An empty sum or zero
// weight falls back to mean_t, and an undefined mean_t to the mean of the
// defined item means (the scale midpoint if there is none).
PredictedRating PredictWithRatings(const ItemSimilarityMatrix& sims,
                                   std::span<const std::optional<double>> item_means,
                                   RatingRowView input, ItemIndex target,
                                   RatingScale scale);

// Same, centred on the means stored in `sims`.
PredictedRating PredictWithRatings(const ItemSimilarityMatrix& sims,
                                   RatingRowView input, ItemIndex target,
                                   RatingScale scale);

// A recommender trained on one training input. Immutable and safe to share
// between threads.
class TrainedModel {
 public:
  // Builds similarities from the training input.
  static TrainedModel Train(ModelId id, std::shared_ptr<const SparseRatingMatrix> raw,
                            RowWeighting weighting = RowWeighting::kMultiplicity);
  static TrainedModel Train(ModelId id, std::shared_ptr<const AnonymizedMatrix> anon,
                            RowWeighting weighting = RowWeighting::kMultiplicity);

  // Assembles a model from parts; checks the model's required fields.
  TrainedModel(ModelId id, std::shared_ptr<const ItemSimilarityMatrix> sims,
               std::shared_ptr<const SparseRatingMatrix> train,
               std::shared_ptr<const AnonymizedMatrix> anon, RatingScale scale);

  ModelId id() const { return id_; }
  const ItemSimilarityMatrix& sims() const { return *sims_; }
  const SparseRatingMatrix* train() const { return train_.get(); }
  const AnonymizedMatrix* anon() const { return anon_.get(); }
  RatingScale scale() const { return scale_; }

  // Dispatches on the input kind the model accepts; throws ModelInputMismatch
  // for any other kind.
  PredictedRating Predict(const PredictionInput& input, ItemIndex target) const;

 private:
  ModelId id_;
  std::shared_ptr<const ItemSimilarityMatrix> sims_;
  std::shared_ptr<const SparseRatingMatrix> train_;
  std::shared_ptr<const AnonymizedMatrix> anon_;
  RatingScale scale_;
};

// The user's whole training row is the revealed set.
PredictedRating PredictCase1Reg(const TrainedModel& model, UserIndex user,
                                ItemIndex target);

// The prototype row of `anon_id` is the revealed set. Throws
// MissingAnonymizedMatrix if the model carries no table.
PredictedRating PredictCase1aAi(const TrainedModel& model, AnonIndex anon_id,
                                ItemIndex target);

// Case1A/UR, Case2/UR and Case2A/UR.
PredictedRating PredictUserRatings(const TrainedModel& model, RatingRowView input,
                                   ItemIndex target);

PredictedRating PredictBaseline(const TrainedModel& model, ItemIndex target);

}  // namespace anonrec

#endif  // ANONREC_PREDICTOR_H_
