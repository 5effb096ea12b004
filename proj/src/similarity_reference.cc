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

#include "anonrec/similarity_reference.h"

#include <algorithm>
#include <cmath>

namespace anonrec::reference {

ItemSimilarityMatrix ComputeWeightedItemSimilarity(
    const SparseRatingMatrix& rows, std::span<const double> row_weights,
    SimilaritySource source) {
  const std::size_t m = rows.num_items();
  ItemSimilarityMatrix sims(m, source, ItemMeans(rows, row_weights));
  auto weight = [&](UserIndex u) {
    return row_weights.empty() ? 1.0 : row_weights[u];
  };

  for (std::size_t i = 0; i < m; ++i) {
    const auto a = static_cast<ItemIndex>(i);
    const auto col_a = rows.column(a);
    for (std::size_t j = i; j < m; ++j) {
      const auto b = static_cast<ItemIndex>(j);
      const auto col_b = rows.column(b);
      if (col_a.empty() || col_b.empty()) continue;
      const double mean_a = *sims.item_means()[a];
      const double mean_b = *sims.item_means()[b];
      double cross = 0.0, left = 0.0, right = 0.0;
      std::size_t common = 0;
      auto p = col_a.begin();
      auto q = col_b.begin();
      while (p != col_a.end() && q != col_b.end()) {
        if (p->user < q->user) {
          ++p;
        } else if (q->user < p->user) {
          ++q;
        } else {
          const double w = weight(p->user);
          const double da = p->value - mean_a;
          const double db = q->value - mean_b;
          cross += w * da * db;
          left += w * da * da;
          right += w * db * db;
          ++common;
          ++p;
          ++q;
        }
      }
      if (common < 2 || left <= kZeroVariance || right <= kZeroVariance) continue;
      const double r = i == j ? 1.0 : cross / (std::sqrt(left) * std::sqrt(right));
      sims.Set(a, b, std::clamp(r, -1.0, 1.0), true);
    }
  }
  return sims;
}

}  // namespace anonrec::reference
