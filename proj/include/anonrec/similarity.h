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

#ifndef ANONREC_SIMILARITY_H_
#define ANONREC_SIMILARITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "anonrec/anonymizer.h"
#include "anonrec/ratings.h"

namespace anonrec {

enum class SimilaritySource { kRaw, kAnonymized };

// How prototype rows enter the anonymized similarity: each one counted
// multiplicity times (default) or once.
enum class RowWeighting { kMultiplicity, kUniform };

// Sums of squared deviations at or below this are treated as zero variance.
inline constexpr double kZeroVariance = 1e-20;

// Symmetric item-item Pearson matrix with the item means it was centred on.
// Pairs with fewer than two co-rating rows or zero variance on the co-rated
// rows hold the default 0 and are flagged undefined.
class ItemSimilarityMatrix {
 public:
  ItemSimilarityMatrix() = default;
  ItemSimilarityMatrix(std::size_t num_items, SimilaritySource source,
                       std::vector<std::optional<double>> item_means);

  std::size_t num_items() const { return num_items_; }
  SimilaritySource source() const { return source_; }

  double at(ItemIndex i, ItemIndex j) const { return values_[i * num_items_ + j]; }
  bool defined(ItemIndex i, ItemIndex j) const {
    return defined_[i * num_items_ + j] != 0;
  }
  std::span<const double> row(ItemIndex i) const {
    return {values_.data() + i * num_items_, num_items_};
  }

  const std::vector<std::optional<double>>& item_means() const { return item_means_; }
  // Mean of the defined item means; nullopt if no item has one.
  std::optional<double> global_mean() const { return global_mean_; }

  // Sets (i, j) and (j, i).
  void Set(ItemIndex i, ItemIndex j, double value, bool defined);

  friend bool operator==(const ItemSimilarityMatrix&, const ItemSimilarityMatrix&) = default;

 private:
  std::size_t num_items_ = 0;
  SimilaritySource source_ = SimilaritySource::kRaw;
  std::vector<double> values_;
  std::vector<std::uint8_t> defined_;
  std::vector<std::optional<double>> item_means_;
  std::optional<double> global_mean_;
};

// Pearson similarity of every item pair over the co-rating rows, centred on
// all-rater item means. Parallel over items (OpenMP); the result does not
// depend on the thread count.
ItemSimilarityMatrix ComputeItemSimilarity(const SparseRatingMatrix& matrix);

ItemSimilarityMatrix ComputeItemSimilarity(
    const AnonymizedMatrix& anon, RowWeighting weighting = RowWeighting::kMultiplicity);

// Shared kernel: rows weighted by `row_weights` (empty = all 1).
ItemSimilarityMatrix ComputeWeightedItemSimilarity(
    const SparseRatingMatrix& rows, std::span<const double> row_weights,
    SimilaritySource source);

struct SimilarityHistogram {
  std::vector<double> bin_edges;  // bins + 1 edges over [-1, 1]
  std::vector<std::size_t> counts;

  std::size_t total() const;
};

inline constexpr std::size_t kDefaultHistogramBins = 40;

// Equal-width histogram of the defined off-diagonal pairs, each unordered pair
// once. The last bin is closed at +1.
SimilarityHistogram ComputeSimilarityHistogram(
    const ItemSimilarityMatrix& sims, std::size_t bins = kDefaultHistogramBins);

struct SignCounts {
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;
};

// Defined off-diagonal unordered pairs by sign.
SignCounts CountSimilaritySigns(const ItemSimilarityMatrix& sims);

}  // namespace anonrec

#endif  // ANONREC_SIMILARITY_H_
