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

#include <cmath>
#include <string>

#include "anonrec/error.h"

namespace anonrec {

namespace {

constexpr ModelId kAllModels[] = {ModelId::kCase1Reg, ModelId::kCase1aUr,
                                  ModelId::kCase1aAi, ModelId::kCase2Ur,
                                  ModelId::kCase2aUr, ModelId::kBaseline};

bool IsAnonymized(ModelId id) {
  return id == ModelId::kCase1aUr || id == ModelId::kCase1aAi ||
         id == ModelId::kCase2aUr;
}

void CheckItem(const ItemSimilarityMatrix& sims, ItemIndex target) {
  if (target >= sims.num_items()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "item " + std::to_string(target) + " >= " +
                    std::to_string(sims.num_items()));
  }
}

PredictedRating MeanFallback(std::optional<double> item_mean,
                             std::optional<double> global, RatingScale scale) {
  if (item_mean) return {scale.Clamp(*item_mean), FallbackLevel::kItemMean};
  return {scale.Clamp(global.value_or(0.5 * (scale.lo + scale.hi))),
          FallbackLevel::kGlobalMean};
}

}  // namespace

std::string_view ModelName(ModelId id) {
  switch (id) {
    case ModelId::kCase1Reg: return "Case1/REG";
    case ModelId::kCase1aUr: return "Case1A/UR";
    case ModelId::kCase1aAi: return "Case1A/AI";
    case ModelId::kCase2Ur: return "Case2/UR";
    case ModelId::kCase2aUr: return "Case2A/UR";
    case ModelId::kBaseline: return "BASELINE";
  }
  return "?";
}

std::optional<ModelId> ParseModelName(std::string_view name) {
  for (ModelId id : kAllModels) {
    if (ModelName(id) == name) return id;
  }
  return std::nullopt;
}

PredictedRating PredictWithRatings(const ItemSimilarityMatrix& sims,
                                   std::span<const std::optional<double>> item_means,
                                   RatingRowView input, ItemIndex target,
                                   RatingScale scale) {
  CheckItem(sims, target);
  if (item_means.size() != sims.num_items()) {
    throw Error(ErrorCode::kInvalidArgument, "one item mean per item required");
  }
  const std::optional<double> target_mean = item_means[target];
  if (!target_mean) return MeanFallback(std::nullopt, MeanOfDefined(item_means), scale);

  const std::span<const double> s = sims.row(target);
  double num = 0.0;
  double den = 0.0;
  for (const RatingEntry& e : input) {
    CheckItem(sims, e.item);
    const std::optional<double>& mean = item_means[e.item];
    if (!mean) continue;
    num += s[e.item] * (e.value - *mean);
    den += std::abs(s[e.item]);
  }
  if (den == 0.0) return MeanFallback(target_mean, std::nullopt, scale);
  return {scale.Clamp(*target_mean + num / den), FallbackLevel::kFull};
}

PredictedRating PredictWithRatings(const ItemSimilarityMatrix& sims,
                                   RatingRowView input, ItemIndex target,
                                   RatingScale scale) {
  return PredictWithRatings(sims, sims.item_means(), input, target, scale);
}

TrainedModel TrainedModel::Train(ModelId id,
                                 std::shared_ptr<const SparseRatingMatrix> raw,
                                 RowWeighting) {
  auto sims = std::make_shared<const ItemSimilarityMatrix>(ComputeItemSimilarity(*raw));
  const RatingScale scale = raw->scale();
  return TrainedModel(id, std::move(sims), std::move(raw), nullptr, scale);
}

TrainedModel TrainedModel::Train(ModelId id,
                                 std::shared_ptr<const AnonymizedMatrix> anon,
                                 RowWeighting weighting) {
  auto sims = std::make_shared<const ItemSimilarityMatrix>(
      ComputeItemSimilarity(*anon, weighting));
  const RatingScale scale = anon->scale();
  return TrainedModel(id, std::move(sims), nullptr, std::move(anon), scale);
}

TrainedModel::TrainedModel(ModelId id, std::shared_ptr<const ItemSimilarityMatrix> sims,
                           std::shared_ptr<const SparseRatingMatrix> train,
                           std::shared_ptr<const AnonymizedMatrix> anon,
                           RatingScale scale)
    : id_(id),
      sims_(std::move(sims)),
      train_(std::move(train)),
      anon_(std::move(anon)),
      scale_(scale) {
  if (!sims_) throw Error(ErrorCode::kInvalidArgument, "model needs similarities");
  const std::string name(ModelName(id_));
  if (IsAnonymized(id_) && sims_->source() != SimilaritySource::kAnonymized) {
    throw Error(ErrorCode::kInvalidArgument, name + " needs anonymized similarities");
  }
  if ((id_ == ModelId::kCase1Reg || id_ == ModelId::kCase2Ur) &&
      sims_->source() != SimilaritySource::kRaw) {
    throw Error(ErrorCode::kInvalidArgument, name + " needs raw similarities");
  }
  if (id_ == ModelId::kCase1Reg && !train_) {
    throw Error(ErrorCode::kInvalidArgument, name + " needs the training matrix");
  }
  if (id_ == ModelId::kCase1aAi && !anon_) {
    throw Error(ErrorCode::kMissingAnonymizedMatrix, name);
  }
}

PredictedRating TrainedModel::Predict(const PredictionInput& input,
                                      ItemIndex target) const {
  auto mismatch = [&](const char* kind) {
    return Error(ErrorCode::kModelInputMismatch,
                 std::string(ModelName(id_)) + " does not accept " + kind);
  };
  return std::visit(
      [&](const auto& in) -> PredictedRating {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, UserIdentity>) {
          if (id_ != ModelId::kCase1Reg) throw mismatch("a user identity");
          return PredictCase1Reg(*this, in.user, target);
        } else if constexpr (std::is_same_v<T, AnonymousIdentity>) {
          if (id_ != ModelId::kCase1aAi) throw mismatch("an anonymous identity");
          return PredictCase1aAi(*this, in.id, target);
        } else if constexpr (std::is_same_v<T, UserRatings>) {
          if (id_ != ModelId::kCase1aUr && id_ != ModelId::kCase2Ur &&
              id_ != ModelId::kCase2aUr) {
            throw mismatch("revealed ratings");
          }
          return PredictUserRatings(*this, in.row, target);
        } else {
          if (id_ != ModelId::kBaseline) throw mismatch("an empty input");
          return PredictBaseline(*this, target);
        }
      },
      input);
}

PredictedRating PredictCase1Reg(const TrainedModel& model, UserIndex user,
                                ItemIndex target) {
  if (!model.train()) {
    throw Error(ErrorCode::kInvalidArgument, "Case1/REG needs the training matrix");
  }
  return PredictWithRatings(model.sims(), model.train()->row(user), target,
                            model.scale());
}

PredictedRating PredictCase1aAi(const TrainedModel& model, AnonIndex anon_id,
                                ItemIndex target) {
  if (!model.anon()) throw Error(ErrorCode::kMissingAnonymizedMatrix, "Case1A/AI");
  if (anon_id >= model.anon()->num_prototypes()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "anonymous identity " + std::to_string(anon_id));
  }
  return PredictWithRatings(model.sims(), model.anon()->prototypes.row(anon_id),
                            target, model.scale());
}

PredictedRating PredictUserRatings(const TrainedModel& model, RatingRowView input,
                                   ItemIndex target) {
  for (const RatingEntry& e : input) {
    if (!model.scale().Contains(e.value)) {
      throw Error(ErrorCode::kRatingOutOfScale, std::to_string(e.value));
    }
  }
  return PredictWithRatings(model.sims(), input, target, model.scale());
}

PredictedRating PredictBaseline(const TrainedModel& model, ItemIndex target) {
  return PredictWithRatings(model.sims(), {}, target, model.scale());
}

}  // namespace anonrec
