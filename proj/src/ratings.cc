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

#include "anonrec/ratings.h"

#include <algorithm>
#include <string>

#include "anonrec/error.h"

namespace anonrec {

double RatingScale::Clamp(double value) const {
  return std::clamp(value, lo, hi);
}

namespace {

void CheckTriple(const RatingTriple& t, std::size_t num_users,
                 std::size_t num_items, RatingScale scale) {
  if (t.user >= num_users || t.item >= num_items) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "entry (" + std::to_string(t.user) + ", " +
                    std::to_string(t.item) + ") outside " +
                    std::to_string(num_users) + " x " +
                    std::to_string(num_items));
  }
  if (!scale.Contains(t.value)) {
    throw Error(ErrorCode::kRatingOutOfScale,
                "rating " + std::to_string(t.value) + " at (" +
                    std::to_string(t.user) + ", " + std::to_string(t.item) +
                    ")");
  }
}

}  // namespace

SparseRatingMatrix SparseRatingMatrix::Build(
    std::span<const RatingTriple> triples, std::size_t num_users,
    std::size_t num_items, RatingScale scale) {
  if (!(scale.lo <= scale.hi)) {
    throw Error(ErrorCode::kInvalidArgument, "rating scale lo > hi");
  }
  for (const RatingTriple& t : triples) CheckTriple(t, num_users, num_items, scale);

  std::vector<RatingTriple> sorted(triples.begin(), triples.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const RatingTriple& a, const RatingTriple& b) {
              return a.user != b.user ? a.user < b.user : a.item < b.item;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].user == sorted[i - 1].user &&
        sorted[i].item == sorted[i - 1].item) {
      throw Error(ErrorCode::kDuplicateEntry,
                  "(" + std::to_string(sorted[i].user) + ", " +
                      std::to_string(sorted[i].item) + ")");
    }
  }

  SparseRatingMatrix m;
  m.num_users_ = num_users;
  m.num_items_ = num_items;
  m.scale_ = scale;
  m.row_offsets_.assign(num_users + 1, 0);
  m.row_entries_.reserve(sorted.size());
  for (const RatingTriple& t : sorted) {
    ++m.row_offsets_[t.user + 1];
    m.row_entries_.push_back({t.item, t.value});
  }
  for (std::size_t u = 0; u < num_users; ++u) {
    m.row_offsets_[u + 1] += m.row_offsets_[u];
  }

  // Counting sort into columns; users arrive in ascending order.
  m.col_offsets_.assign(num_items + 1, 0);
  for (const RatingTriple& t : sorted) ++m.col_offsets_[t.item + 1];
  for (std::size_t i = 0; i < num_items; ++i) {
    m.col_offsets_[i + 1] += m.col_offsets_[i];
  }
  m.col_entries_.resize(sorted.size());
  std::vector<std::size_t> cursor(m.col_offsets_.begin(),
                                  m.col_offsets_.end() - 1);
  for (const RatingTriple& t : sorted) {
    m.col_entries_[cursor[t.item]++] = {t.user, t.value};
  }
  return m;
}

SparseRatingMatrix SparseRatingMatrix::FromRows(std::span<const RatingRow> rows,
                                                std::size_t num_items,
                                                RatingScale scale) {
  std::vector<RatingTriple> triples;
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (const RatingEntry& e : rows[u]) {
      triples.push_back({static_cast<UserIndex>(u), e.item, e.value});
    }
  }
  return Build(triples, rows.size(), num_items, scale);
}

RatingRowView SparseRatingMatrix::row(UserIndex user) const {
  if (user >= num_users_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "user " + std::to_string(user) + " >= " +
                    std::to_string(num_users_));
  }
  return {row_entries_.data() + row_offsets_[user],
          row_offsets_[user + 1] - row_offsets_[user]};
}

std::span<const UserEntry> SparseRatingMatrix::column(ItemIndex item) const {
  if (item >= num_items_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "item " + std::to_string(item) + " >= " +
                    std::to_string(num_items_));
  }
  return {col_entries_.data() + col_offsets_[item],
          col_offsets_[item + 1] - col_offsets_[item]};
}

std::optional<double> SparseRatingMatrix::Find(UserIndex user,
                                               ItemIndex item) const {
  const RatingRowView r = row(user);
  auto it = std::lower_bound(
      r.begin(), r.end(), item,
      [](const RatingEntry& e, ItemIndex i) { return e.item < i; });
  if (it == r.end() || it->item != item) return std::nullopt;
  return it->value;
}

std::vector<RatingTriple> SparseRatingMatrix::Triples() const {
  std::vector<RatingTriple> out;
  out.reserve(row_entries_.size());
  for (std::size_t u = 0; u < num_users_; ++u) {
    for (std::size_t p = row_offsets_[u]; p < row_offsets_[u + 1]; ++p) {
      out.push_back({static_cast<UserIndex>(u), row_entries_[p].item,
                     row_entries_[p].value});
    }
  }
  return out;
}

bool operator==(const SparseRatingMatrix& a, const SparseRatingMatrix& b) {
  return a.num_users_ == b.num_users_ && a.num_items_ == b.num_items_ &&
         a.scale_ == b.scale_ && a.row_offsets_ == b.row_offsets_ &&
         a.row_entries_ == b.row_entries_;
}

ItemStats ComputeItemStats(const SparseRatingMatrix& matrix, ItemIndex item) {
  ItemStats stats;
  stats.item = item;
  double sum = 0.0;
  for (const UserEntry& e : matrix.column(item)) {
    stats.raters.push_back(e.user);
    sum += e.value;
  }
  if (!stats.raters.empty()) {
    stats.mean = sum / static_cast<double>(stats.raters.size());
  }
  return stats;
}

std::vector<std::optional<double>> ItemMeans(const SparseRatingMatrix& matrix,
                                             std::span<const double> row_weights) {
  if (!row_weights.empty() && row_weights.size() != matrix.num_users()) {
    throw Error(ErrorCode::kInvalidArgument, "one weight per row required");
  }
  std::vector<std::optional<double>> means(matrix.num_items());
  for (std::size_t i = 0; i < matrix.num_items(); ++i) {
    double sum = 0.0;
    double weight = 0.0;
    for (const UserEntry& e : matrix.column(static_cast<ItemIndex>(i))) {
      const double w = row_weights.empty() ? 1.0 : row_weights[e.user];
      sum += w * e.value;
      weight += w;
    }
    if (weight > 0.0) means[i] = sum / weight;
  }
  return means;
}

std::optional<double> MeanOfDefined(std::span<const std::optional<double>> means) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& m : means) {
    if (m) {
      sum += *m;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

double Sparsity(const SparseRatingMatrix& matrix) {
  const std::size_t cells = matrix.num_users() * matrix.num_items();
  if (cells == 0) throw Error(ErrorCode::kEmptyMatrix, "n * m = 0");
  return static_cast<double>(matrix.num_ratings()) / static_cast<double>(cells);
}

}  // namespace anonrec
