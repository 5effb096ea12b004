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

#ifndef ANONREC_RATINGS_H_
#define ANONREC_RATINGS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace anonrec {

// Dense 0-based indices. External identifiers (MovieLens ids and the like)
// live in the side tables of Dataset, see io.h.
using UserIndex = std::uint32_t;
using ItemIndex = std::uint32_t;

struct RatingScale {
  double lo = 1.0;
  double hi = 5.0;

  bool Contains(double value) const { return value >= lo && value <= hi; }
  double Clamp(double value) const;

  friend bool operator==(const RatingScale&, const RatingScale&) = default;
};

struct RatingTriple {
  UserIndex user = 0;
  ItemIndex item = 0;
  double value = 0.0;

  friend bool operator==(const RatingTriple&, const RatingTriple&) = default;
};

struct RatingEntry {
  ItemIndex item = 0;
  double value = 0.0;

  friend bool operator==(const RatingEntry&, const RatingEntry&) = default;
};

struct UserEntry {
  UserIndex user = 0;
  double value = 0.0;
};

// A user's ratings, sorted by item with no repeats.
using RatingRow = std::vector<RatingEntry>;
using RatingRowView = std::span<const RatingEntry>;

// Immutable missing-aware n x m rating matrix. Stored twice, row-major (by
// user) and column-major (by item), both sorted by the minor index. Values
// are real so the same type also holds averaged prototype rows.
class SparseRatingMatrix {
 public:
  // The empty 0 x 0 matrix.
  SparseRatingMatrix() = default;

  // Throws DuplicateEntry, IndexOutOfRange or RatingOutOfScale.
  static SparseRatingMatrix Build(std::span<const RatingTriple> triples,
                                  std::size_t num_users, std::size_t num_items,
                                  RatingScale scale);

  // Rows must already be sorted by item; they are validated the same way.
  static SparseRatingMatrix FromRows(std::span<const RatingRow> rows,
                                     std::size_t num_items, RatingScale scale);

  std::size_t num_users() const { return num_users_; }
  std::size_t num_items() const { return num_items_; }
  std::size_t num_ratings() const { return row_entries_.size(); }
  RatingScale scale() const { return scale_; }

  RatingRowView row(UserIndex user) const;
  std::span<const UserEntry> column(ItemIndex item) const;
  std::optional<double> Find(UserIndex user, ItemIndex item) const;

  // Every entry in (user, item) order.
  std::vector<RatingTriple> Triples() const;

  friend bool operator==(const SparseRatingMatrix& a,
                         const SparseRatingMatrix& b);

 private:
  std::size_t num_users_ = 0;
  std::size_t num_items_ = 0;
  RatingScale scale_;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<RatingEntry> row_entries_;
  std::vector<std::size_t> col_offsets_{0};
  std::vector<UserEntry> col_entries_;
};

inline SparseRatingMatrix BuildMatrix(std::span<const RatingTriple> triples,
                                      std::size_t num_users,
                                      std::size_t num_items,
                                      RatingScale scale = {}) {
  return SparseRatingMatrix::Build(triples, num_users, num_items, scale);
}

struct ItemStats {
  ItemIndex item = 0;
  std::vector<UserIndex> raters;  // U_i, ascending
  std::optional<double> mean;     // absent iff raters is empty
};

ItemStats ComputeItemStats(const SparseRatingMatrix& matrix, ItemIndex item);

// Per-item rating means. With `row_weights` (one per row) each row counts
// `row_weights[u]` times, which is how prototype tables are averaged.
std::vector<std::optional<double>> ItemMeans(
    const SparseRatingMatrix& matrix, std::span<const double> row_weights = {});

// Mean of the defined entries of `means`, or nullopt if none is defined.
std::optional<double> MeanOfDefined(std::span<const std::optional<double>> means);

// |Omega| / (n m). Throws EmptyMatrix when n m = 0.
double Sparsity(const SparseRatingMatrix& matrix);

}  // namespace anonrec

#endif  // ANONREC_RATINGS_H_
