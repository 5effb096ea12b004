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

#include "anonrec/anonymizer.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "anonrec/error.h"
#include "anonrec/random.h"

namespace anonrec {

std::size_t AnonymizedMatrix::num_members() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(),
                         std::size_t{0});
}

std::vector<double> AnonymizedMatrix::Weights() const {
  return {multiplicities.begin(), multiplicities.end()};
}

AnonIndex AssignmentMap::operator()(UserIndex user) const {
  if (user >= anon_of_user.size()) {
    throw Error(ErrorCode::kUnknownUser, "user " + std::to_string(user));
  }
  return anon_of_user[user];
}

std::vector<std::size_t> AssignmentMap::PreimageSizes() const {
  std::vector<std::size_t> sizes(num_anonymous, 0);
  for (AnonIndex a : anon_of_user) ++sizes.at(a);
  return sizes;
}

std::vector<std::vector<UserIndex>> AssignmentMap::Members() const {
  std::vector<std::vector<UserIndex>> members(num_anonymous);
  for (std::size_t u = 0; u < anon_of_user.size(); ++u) {
    members.at(anon_of_user[u]).push_back(static_cast<UserIndex>(u));
  }
  return members;
}

RatingRow BuildPrototype(std::span<const RatingRowView> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyCluster, "no rows to average");
  std::vector<RatingEntry> all;
  for (RatingRowView row : rows) all.insert(all.end(), row.begin(), row.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const RatingEntry& a, const RatingEntry& b) {
                     return a.item < b.item;
                   });
  RatingRow out;
  for (std::size_t p = 0; p < all.size();) {
    std::size_t q = p;
    double sum = 0.0;
    while (q < all.size() && all[q].item == all[p].item) sum += all[q++].value;
    out.push_back({all[p].item, sum / static_cast<double>(q - p)});
    p = q;
  }
  return out;
}

namespace {

Anonymization IdentityAnonymization(const SparseRatingMatrix& matrix) {
  Anonymization out;
  out.table.prototypes = matrix;
  out.table.multiplicities.assign(matrix.num_users(), 1);
  out.table.k = 1;
  out.sigma.num_anonymous = matrix.num_users();
  out.sigma.anon_of_user.resize(matrix.num_users());
  std::iota(out.sigma.anon_of_user.begin(), out.sigma.anon_of_user.end(),
            AnonIndex{0});
  return out;
}

// Users in the mean-imputed space, stored as sparse deviations from the
// imputation vector mu: x_u = mu + d_u. A centroid c is kept as e = c - mu, so
// |x_u - c|^2 = |d_u|^2 - 2 <d_u, e> + |e|^2 costs O(|I_u|).
class ImputedClusters {
 public:
  ImputedClusters(const SparseRatingMatrix& matrix, std::size_t num_clusters)
      : num_items_(matrix.num_items()),
        deviations_(matrix.num_users()),
        deviation_norms_(matrix.num_users(), 0.0),
        offsets_(num_clusters * num_items_, 0.0),
        offset_norms_(num_clusters, 0.0),
        members_(num_clusters) {
    const std::vector<std::optional<double>> means = ItemMeans(matrix);
    double total = 0.0;
    for (const RatingTriple& t : matrix.Triples()) total += t.value;
    const double fallback =
        matrix.num_ratings() > 0
            ? total / static_cast<double>(matrix.num_ratings())
            : 0.5 * (matrix.scale().lo + matrix.scale().hi);
    for (std::size_t u = 0; u < matrix.num_users(); ++u) {
      for (const RatingEntry& e : matrix.row(static_cast<UserIndex>(u))) {
        const double d = e.value - means[e.item].value_or(fallback);
        deviations_[u].push_back({e.item, d});
        deviation_norms_[u] += d * d;
      }
    }
  }

  std::size_t size(std::size_t cluster) const { return members_[cluster].size(); }
  std::size_t num_clusters() const { return members_.size(); }
  const std::vector<UserIndex>& members(std::size_t cluster) const {
    return members_[cluster];
  }

  double Distance2(UserIndex user, std::size_t cluster) const {
    const double* e = &offsets_[cluster * num_items_];
    double dot = 0.0;
    for (const RatingEntry& d : deviations_[user]) dot += d.value * e[d.item];
    return deviation_norms_[user] - 2.0 * dot + offset_norms_[cluster];
  }

  std::size_t Nearest(UserIndex user) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < members_.size(); ++c) {
      const double d = Distance2(user, c);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  }

  void Add(UserIndex user, std::size_t cluster) {
    members_[cluster].push_back(user);
    // e <- e + (d_u - e) / s
    const double s = static_cast<double>(members_[cluster].size());
    Rescale(cluster, (s - 1.0) / s, user, 1.0 / s);
  }

  void Remove(UserIndex user, std::size_t cluster) {
    auto& m = members_[cluster];
    m.erase(std::find(m.begin(), m.end(), user));
    // e <- (s e - d_u) / (s - 1)
    const double s = static_cast<double>(m.size() + 1);
    Rescale(cluster, s / (s - 1.0), user, -1.0 / (s - 1.0));
  }

 private:
  // e <- a e + b d_u, then refresh |e|^2.
  void Rescale(std::size_t cluster, double a, UserIndex user, double b) {
    double* e = &offsets_[cluster * num_items_];
    for (std::size_t i = 0; i < num_items_; ++i) e[i] *= a;
    for (const RatingEntry& d : deviations_[user]) e[d.item] += b * d.value;
    double norm = 0.0;
    for (std::size_t i = 0; i < num_items_; ++i) norm += e[i] * e[i];
    offset_norms_[cluster] = norm;
  }

  std::size_t num_items_;
  std::vector<RatingRow> deviations_;
  std::vector<double> deviation_norms_;
  std::vector<double> offsets_;  // num_clusters x num_items, row-major
  std::vector<double> offset_norms_;
  std::vector<std::vector<UserIndex>> members_;
};

void Rebalance(ImputedClusters& clusters, std::size_t k) {
  const std::size_t num = clusters.num_clusters();
  for (;;) {
    std::size_t deficient = num;
    for (std::size_t c = 0; c < num && deficient == num; ++c) {
      if (clusters.size(c) < k) deficient = c;
    }
    if (deficient == num) return;

    std::size_t donor = 0;
    for (std::size_t c = 1; c < num; ++c) {
      if (clusters.size(c) > clusters.size(donor)) donor = c;
    }
    // n >= K k guarantees a donor above k whenever some cluster is below.
    UserIndex moved = 0;
    double best = std::numeric_limits<double>::infinity();
    for (UserIndex u : clusters.members(donor)) {
      const double d = clusters.Distance2(u, deficient);
      if (d < best || (d == best && u < moved)) {
        best = d;
        moved = u;
      }
    }
    clusters.Remove(moved, donor);
    clusters.Add(moved, deficient);
  }
}

}  // namespace

Anonymization OkaAnonymize(const SparseRatingMatrix& matrix, std::size_t k,
                           std::uint64_t seed) {
  const std::size_t n = matrix.num_users();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidK, "k=" + std::to_string(k) +
                                          " must be in [1, " +
                                          std::to_string(n) + "]");
  }
  if (k == 1) return IdentityAnonymization(matrix);

  const std::size_t num_clusters = n / k;
  ImputedClusters clusters(matrix, num_clusters);

  Rng rng(seed);
  const std::vector<std::size_t> seeds = rng.Sample(n, num_clusters);
  std::vector<bool> is_seed(n, false);
  for (std::size_t c = 0; c < num_clusters; ++c) {
    is_seed[seeds[c]] = true;
    clusters.Add(static_cast<UserIndex>(seeds[c]), c);
  }

  std::vector<UserIndex> order(n);
  std::iota(order.begin(), order.end(), UserIndex{0});
  rng.Shuffle(std::span<UserIndex>(order));
  for (UserIndex u : order) {
    if (!is_seed[u]) clusters.Add(u, clusters.Nearest(u));
  }
  Rebalance(clusters, k);

  Anonymization out;
  out.table.k = k;
  out.sigma.num_anonymous = num_clusters;
  out.sigma.anon_of_user.assign(n, 0);
  std::vector<RatingRow> prototypes(num_clusters);
  for (std::size_t c = 0; c < num_clusters; ++c) {
    std::vector<UserIndex> members = clusters.members(c);
    std::sort(members.begin(), members.end());
    std::vector<RatingRowView> rows;
    rows.reserve(members.size());
    for (UserIndex u : members) {
      rows.push_back(matrix.row(u));
      out.sigma.anon_of_user[u] = static_cast<AnonIndex>(c);
    }
    prototypes[c] = BuildPrototype(rows);
    out.table.multiplicities.push_back(members.size());
  }
  out.table.prototypes = SparseRatingMatrix::FromRows(
      prototypes, matrix.num_items(), matrix.scale());
  return out;
}

AnonymityAudit AuditKAnonymity(const AnonymizedMatrix& anon) {
  AnonymityAudit audit;
  for (std::size_t size : anon.multiplicities) ++audit.class_sizes[size];
  if (!audit.class_sizes.empty()) {
    audit.min_class_size = audit.class_sizes.begin()->first;
  }
  audit.satisfied_k = audit.min_class_size;
  return audit;
}

ResidualAnonymity ComputeResidualAnonymity(const AnonymizedMatrix& anon,
                                           const AssignmentMap& sigma,
                                           std::span<const UserIndex> revealed) {
  if (sigma.num_anonymous != anon.num_prototypes()) {
    throw Error(ErrorCode::kInvalidArgument,
                "assignment map does not match the anonymized table");
  }
  ResidualAnonymity out;
  out.residual = anon.multiplicities;
  std::vector<bool> seen(sigma.num_users(), false);
  for (UserIndex u : revealed) {
    const AnonIndex a = sigma(u);  // throws UnknownUser
    if (seen[u]) continue;
    seen[u] = true;
    if (out.residual[a] > 0) --out.residual[a];
  }
  if (!out.residual.empty()) {
    out.min_residual = *std::min_element(out.residual.begin(), out.residual.end());
  }
  return out;
}

}  // namespace anonrec
