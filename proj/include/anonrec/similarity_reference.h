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

#ifndef ANONREC_SIMILARITY_REFERENCE_H_
#define ANONREC_SIMILARITY_REFERENCE_H_

#include <span>

#include "anonrec/ratings.h"
#include "anonrec/similarity.h"

namespace anonrec::reference {

// Single-threaded pair-by-pair evaluation that merges the two item columns.
// Kept as the baseline the parallel kernel is tested and benchmarked against.
ItemSimilarityMatrix ComputeWeightedItemSimilarity(
    const SparseRatingMatrix& rows, std::span<const double> row_weights,
    SimilaritySource source);

}  // namespace anonrec::reference

#endif  // ANONREC_SIMILARITY_REFERENCE_H_
