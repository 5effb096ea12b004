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

#ifndef ANONREC_IO_H_
#define ANONREC_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anonrec/anonymizer.h"
#include "anonrec/evaluation.h"
#include "anonrec/ratings.h"
#include "anonrec/similarity.h"

namespace anonrec {

// A rating as it appears in a dataset file, with the file's own identifiers.
struct ExternalRating {
  std::int64_t user = 0;
  std::int64_t item = 0;
  double value = 0.0;

  friend bool operator==(const ExternalRating&, const ExternalRating&) = default;
};

enum class DatasetFormat { kMovieLens100k, kMovieLens1m, kCsvTriples };

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name);
std::string_view DatasetFormatName(DatasetFormat format);

struct DatasetDescriptor {
  DatasetFormat format = DatasetFormat::kMovieLens100k;
  std::filesystem::path path;
  RatingScale scale;
};

// "user<TAB>item<TAB>rating<TAB>timestamp" per line. Errors name the 1-based
// line: MalformedLine, RatingOutOfScale.
std::vector<ExternalRating> ParseMovieLens100k(std::istream& in, RatingScale scale = {});

// "user::item::rating::timestamp" per line.
std::vector<ExternalRating> ParseMovieLens1m(std::istream& in, RatingScale scale = {});

// "user,item,rating" per line; a first line starting with a letter is a header.
std::vector<ExternalRating> ParseCsvTriples(std::istream& in, RatingScale scale = {});

std::vector<ExternalRating> ParseRatings(std::istream& in, DatasetFormat format,
                                         RatingScale scale = {});

// Ratings over dense indices plus the side tables back to file identifiers.
// Indices follow ascending identifier order.
struct Dataset {
  SparseRatingMatrix matrix;
  std::vector<std::int64_t> user_ids;
  std::vector<std::int64_t> item_ids;

  std::optional<UserIndex> UserOf(std::int64_t id) const;
  std::optional<ItemIndex> ItemOf(std::int64_t id) const;
};

// Throws DuplicateEntry if an (user, item) pair repeats.
Dataset IndexRatings(std::span<const ExternalRating> ratings, RatingScale scale);

// Reads and indexes a dataset file; throws IoError if unreadable.
Dataset LoadDataset(const DatasetDescriptor& descriptor);

// Shortest decimal that parses back to the same double.
std::string FormatDouble(double value);
// Whole-string parse; nullopt on any leftover or malformed text.
std::optional<double> ParseDouble(std::string_view text);

// 64-bit FNV-1a, printed as 16 lowercase hex digits in file trailers.
std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t state = 0xcbf29ce484222325ULL);
std::string Hex64(std::uint64_t value);

// anonrec-v1:
//   anonrec-v1 <n'> <m> <k> <lo> <hi>
//   a:<id> k:<k_u> <item>=<value> ...        one line per prototype, ids 1-based
//   sigma:                                   optional section
//   <user> <anon-id>                         one line per user, 1-based
//   checksum <fnv1a-64 of every byte above>
void WriteAnonymized(std::ostream& out, const AnonymizedMatrix& anon,
                     const AssignmentMap* sigma = nullptr);

struct AnonymizedFile {
  AnonymizedMatrix table;
  std::optional<AssignmentMap> sigma;
};

// Throws FormatVersionMismatch, ChecksumMismatch or MalformedLine.
AnonymizedFile ReadAnonymized(std::istream& in);

// anonrec-sim-v1:
//   anonrec-sim-v1 <m> <raw|anonymized>
//   i:<id> mean=<value|na> <j>=<s_ij> ...    defined pairs with j >= i
//   checksum <fnv1a-64>
void WriteSimilarity(std::ostream& out, const ItemSimilarityMatrix& sims);
ItemSimilarityMatrix ReadSimilarity(std::istream& in);

// model,k,n,rmse,rmse_sd,fallback_rate
void WriteResultCsv(std::ostream& out, const ExperimentResult& result);

}  // namespace anonrec

#endif  // ANONREC_IO_H_
