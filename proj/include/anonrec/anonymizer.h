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

#ifndef ANONREC_ANONYMIZER_H_
#define ANONREC_ANONYMIZER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "anonrec/ratings.h"

namespace anonrec {

using AnonIndex = std::uint32_t;

// The published table {(prototype row, multiplicity)}. Row a of `prototypes`
// stands for `multiplicities[a]` users.
struct AnonymizedMatrix {
  SparseRatingMatrix prototypes;
  std::vector<std::size_t> multiplicities;
  std::size_t k = 1;  // anonymity parameter used at construction

  std::size_t num_prototypes() const { return multiplicities.size(); }
  std::size_t num_items() const { return prototypes.num_items(); }
  RatingScale scale() const { return prototypes.scale(); }
  std::size_t num_members() const;  // sum of multiplicities = n
  std::vector<double> Weights() const;

  friend bool operator==(const AnonymizedMatrix&, const AnonymizedMatrix&) = default;
};

// sigma: user -> anonymous identity. Total over [0, n) and onto [0, n').
struct AssignmentMap {
  std::vector<AnonIndex> anon_of_user;
  std::size_t num_anonymous = 0;

  std::size_t num_users() const { return anon_of_user.size(); }
  AnonIndex operator()(UserIndex user) const;
  std::vector<std::size_t> PreimageSizes() const;
  std::vector<std::vector<UserIndex>> Members() const;

  friend bool operator==(const AssignmentMap&, const AssignmentMap&) = default;
};

struct Anonymization {
  AnonymizedMatrix table;
  AssignmentMap sigma;
};

// One-pass K-means microaggregation.
//
// K = floor(n / k) clusters. Users are compared as dense rows in which every
// missing rating is imputed by its item mean (by the global rating mean when
// the item is unrated). K distinct users drawn at random seed the clusters;
// the remaining users are visited once in a random order and each joins the
// nearest centroid (Euclidean, lowest cluster index on ties), which is then
// updated incrementally. While some cluster is smaller than k, the largest
// cluster (lowest index on ties) gives up the member closest to the lowest
// indexed deficient centroid (lowest user on ties). Prototypes are per-item
// means over the members' original sparse ratings; imputed values never leave
// the clustering.
//
// k = 1 is the identity anonymization. Throws InvalidK unless 1 <= k <= n.
Anonymization OkaAnonymize(const SparseRatingMatrix& matrix, std::size_t k,
                           std::uint64_t seed);

// Per-item mean over exactly the rows that rate the item. Throws EmptyCluster
// for an empty list.
RatingRow BuildPrototype(std::span<const RatingRowView> rows);

struct AnonymityAudit {
  std::size_t min_class_size = 0;
  std::map<std::size_t, std::size_t> class_sizes;  // size -> number of classes
  std::size_t satisfied_k = 0;
};

AnonymityAudit AuditKAnonymity(const AnonymizedMatrix& anon);

struct ResidualAnonymity {
  std::vector<std::size_t> residual;  // per anonymous identity
  std::size_t min_residual = 0;
};

// Class sizes left once the recommender has linked `revealed` users to their
// classes. Repeated users count once. Throws UnknownUser.
ResidualAnonymity ComputeResidualAnonymity(const AnonymizedMatrix& anon,
                                           const AssignmentMap& sigma,
                                           std::span<const UserIndex> revealed);

}  // namespace anonrec

#endif  // ANONREC_ANONYMIZER_H_
