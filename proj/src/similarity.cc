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

#include "anonrec/similarity.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "anonrec/error.h"

namespace anonrec {

ItemSimilarityMatrix::ItemSimilarityMatrix(
    std::size_t num_items, SimilaritySource source,
    std::vector<std::optional<double>> item_means)
    : num_items_(num_items),
      source_(source),
      values_(num_items * num_items, 0.0),
      defined_(num_items * num_items, 0),
      item_means_(std::move(item_means)),
      global_mean_(MeanOfDefined(item_means_)) {
  if (item_means_.size() != num_items) {
    throw Error(ErrorCode::kInvalidArgument, "one item mean per item required");
  }
}

void ItemSimilarityMatrix::Set(ItemIndex i, ItemIndex j, double value,
                               bool defined) {
  values_[i * num_items_ + j] = value;
  values_[j * num_items_ + i] = value;
  defined_[i * num_items_ + j] = defined ? 1 : 0;
  defined_[j * num_items_ + i] = defined ? 1 : 0;
}

namespace {

struct PairSums {
  double cross = 0.0;
  double left = 0.0;
  double right = 0.0;
  std::uint32_t rows = 0;
};

// (value, defined) for accumulated co-rater sums.
std::pair<double, bool> Correlation(const PairSums& s) {
  if (s.rows < 2 || s.left <= kZeroVariance || s.right <= kZeroVariance) {
    return {0.0, false};
  }
  const double r = s.cross / (std::sqrt(s.left) * std::sqrt(s.right));
  return {std::clamp(r, -1.0, 1.0), true};
}

}  // namespace

ItemSimilarityMatrix ComputeWeightedItemSimilarity(
    const SparseRatingMatrix& rows, std::span<const double> row_weights,
    SimilaritySource source) {
  const std::size_t m = rows.num_items();
  ItemSimilarityMatrix sims(m, source, ItemMeans(rows, row_weights));
  std::vector<double> centre(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) centre[i] = sims.item_means()[i].value_or(0.0);
  auto weight = [&](UserIndex u) {
    return row_weights.empty() ? 1.0 : row_weights[u];
  };

  // Row i of the upper triangle is owned by iteration i. Within a pair the
  // sums run over co-raters in ascending user order, so the result is the
  // same for any schedule.
  const auto num = static_cast<std::int64_t>(m);
#pragma omp parallel
  {
    std::vector<PairSums> acc(m);
    std::vector<ItemIndex> touched;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t ii = 0; ii < num; ++ii) {
      const auto i = static_cast<ItemIndex>(ii);
      PairSums diag;
      for (const UserEntry& rater : rows.column(i)) {
        const double w = weight(rater.user);
        const double di = rater.value - centre[i];
        diag.left += w * di * di;
        ++diag.rows;
        for (const RatingEntry& other : rows.row(rater.user)) {
          if (other.item <= i) continue;
          const double dj = other.value - centre[other.item];
          PairSums& s = acc[other.item];
          if (s.rows == 0) touched.push_back(other.item);
          s.cross += w * di * dj;
          s.left += w * di * di;
          s.right += w * dj * dj;
          ++s.rows;
        }
      }
      diag.right = diag.left;
      diag.cross = diag.left;
      const auto [dv, dd] = Correlation(diag);
      sims.Set(i, i, dd ? 1.0 : dv, dd);
      for (ItemIndex j : touched) {
        const auto [v, d] = Correlation(acc[j]);
        // Only (i, j) with j > i: distinct iterations never share a cell.
        sims.Set(i, j, v, d);
        acc[j] = PairSums{};
      }
      touched.clear();
    }
  }
  return sims;
}

ItemSimilarityMatrix ComputeItemSimilarity(const SparseRatingMatrix& matrix) {
  return ComputeWeightedItemSimilarity(matrix, {}, SimilaritySource::kRaw);
}

ItemSimilarityMatrix ComputeItemSimilarity(const AnonymizedMatrix& anon,
                                           RowWeighting weighting) {
  const std::vector<double> weights =
      weighting == RowWeighting::kMultiplicity ? anon.Weights()
                                               : std::vector<double>{};
  return ComputeWeightedItemSimilarity(anon.prototypes, weights,
                                       SimilaritySource::kAnonymized);
}

std::size_t SimilarityHistogram::total() const {
  std::size_t t = 0;
  for (std::size_t c : counts) t += c;
  return t;
}

SimilarityHistogram ComputeSimilarityHistogram(const ItemSimilarityMatrix& sims,
                                               std::size_t bins) {
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 1");
  SimilarityHistogram h;
  h.counts.assign(bins, 0);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.bin_edges.push_back(-1.0 + 2.0 * static_cast<double>(b) / static_cast<double>(bins));
  }
  const std::size_t m = sims.num_items();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto a = static_cast<ItemIndex>(i), b = static_cast<ItemIndex>(j);
      if (!sims.defined(a, b)) continue;
      const double pos = (sims.at(a, b) + 1.0) / 2.0 * static_cast<double>(bins);
      const auto bin = std::min(static_cast<std::size_t>(std::max(pos, 0.0)), bins - 1);
      ++h.counts[bin];
    }
  }
  return h;
}

SignCounts CountSimilaritySigns(const ItemSimilarityMatrix& sims) {
  SignCounts c;
  const std::size_t m = sims.num_items();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto a = static_cast<ItemIndex>(i), b = static_cast<ItemIndex>(j);
      if (!sims.defined(a, b)) continue;
      const double v = sims.at(a, b);
      if (v < 0.0) {
        ++c.negative;
      } else if (v > 0.0) {
        ++c.positive;
      } else {
        ++c.zero;
      }
    }
  }
  return c;
}

}  // namespace anonrec
