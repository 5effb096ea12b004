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

#include "anonrec/io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "anonrec/error.h"

namespace anonrec {

namespace {

std::vector<std::string_view> SplitOn(std::string_view line, std::string_view sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + sep.size();
  }
}

template <typename Int>
std::optional<Int> ParseInt(std::string_view text) {
  Int value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

Error Malformed(std::size_t line, std::string_view why) {
  return Error(ErrorCode::kMalformedLine,
               "line " + std::to_string(line) + ": " + std::string(why));
}

std::vector<ExternalRating> ParseDelimited(std::istream& in, std::string_view sep,
                                           std::size_t min_fields,
                                           std::size_t max_fields, bool allow_header,
                                           RatingScale scale) {
  std::vector<ExternalRating> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (allow_header && number == 1 && !line.empty() &&
        std::isalpha(static_cast<unsigned char>(line.front()))) {
      continue;
    }
    const std::vector<std::string_view> f = SplitOn(line, sep);
    if (f.size() < min_fields || f.size() > max_fields) {
      throw Malformed(number, "expected " + std::to_string(min_fields) +
                                  " fields separated by '" + std::string(sep) + "'");
    }
    const auto user = ParseInt<std::int64_t>(f[0]);
    const auto item = ParseInt<std::int64_t>(f[1]);
    const auto value = ParseDouble(f[2]);
    if (!user || !item || !value) throw Malformed(number, "bad number");
    if (f.size() > 3 && !ParseInt<std::int64_t>(f[3])) {
      throw Malformed(number, "bad timestamp");
    }
    if (!scale.Contains(*value)) {
      throw Error(ErrorCode::kRatingOutOfScale,
                  "line " + std::to_string(number) + ": " + std::string(f[2]));
    }
    out.push_back({*user, *item, *value});
  }
  return out;
}

// Splits a serialized document into its body and checksum trailer and checks
// the digest.
std::string_view VerifiedBody(const std::string& text) {
  std::string_view all(text);
  if (!all.empty() && all.back() == '\n') all.remove_suffix(1);
  const std::size_t nl = all.rfind('\n');
  const std::string_view trailer = nl == std::string_view::npos ? all : all.substr(nl + 1);
  const std::string_view body =
      nl == std::string_view::npos ? std::string_view{} : std::string_view(text).substr(0, nl + 1);
  constexpr std::string_view kTag = "checksum ";
  if (trailer.substr(0, kTag.size()) != kTag) {
    throw Error(ErrorCode::kChecksumMismatch, "missing checksum trailer");
  }
  const std::string expected = Hex64(Fnv1a64(body));
  if (trailer.substr(kTag.size()) != expected) {
    throw Error(ErrorCode::kChecksumMismatch,
                "stored " + std::string(trailer.substr(kTag.size())) + ", computed " + expected);
  }
  return body;
}

std::string ReadAll(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> Lines(std::string_view body) {
  std::vector<std::string_view> lines = SplitOn(body, "\n");
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

// "<prefix><int>" -> int
template <typename Int>
std::optional<Int> Tagged(std::string_view token, std::string_view prefix) {
  if (token.substr(0, prefix.size()) != prefix) return std::nullopt;
  return ParseInt<Int>(token.substr(prefix.size()));
}

// "<item>=<value>" with a 1-based item
std::optional<RatingEntry> ItemValue(std::string_view token) {
  const std::size_t eq = token.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  const auto item = ParseInt<std::uint32_t>(token.substr(0, eq));
  const auto value = ParseDouble(token.substr(eq + 1));
  if (!item || !value || *item == 0) return std::nullopt;
  return RatingEntry{*item - 1, *value};
}

}  // namespace

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name) {
  if (name == "movielens-100k") return DatasetFormat::kMovieLens100k;
  if (name == "movielens-1m") return DatasetFormat::kMovieLens1m;
  if (name == "csv-triples") return DatasetFormat::kCsvTriples;
  return std::nullopt;
}

std::string_view DatasetFormatName(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::kMovieLens100k: return "movielens-100k";
    case DatasetFormat::kMovieLens1m: return "movielens-1m";
    case DatasetFormat::kCsvTriples: return "csv-triples";
  }
  return "?";
}

std::vector<ExternalRating> ParseMovieLens100k(std::istream& in, RatingScale scale) {
  return ParseDelimited(in, "\t", 4, 4, false, scale);
}

std::vector<ExternalRating> ParseMovieLens1m(std::istream& in, RatingScale scale) {
  return ParseDelimited(in, "::", 4, 4, false, scale);
}

std::vector<ExternalRating> ParseCsvTriples(std::istream& in, RatingScale scale) {
  return ParseDelimited(in, ",", 3, 4, true, scale);
}

std::vector<ExternalRating> ParseRatings(std::istream& in, DatasetFormat format,
                                         RatingScale scale) {
  switch (format) {
    case DatasetFormat::kMovieLens100k: return ParseMovieLens100k(in, scale);
    case DatasetFormat::kMovieLens1m: return ParseMovieLens1m(in, scale);
    case DatasetFormat::kCsvTriples: return ParseCsvTriples(in, scale);
  }
  return {};
}

std::optional<UserIndex> Dataset::UserOf(std::int64_t id) const {
  auto it = std::lower_bound(user_ids.begin(), user_ids.end(), id);
  if (it == user_ids.end() || *it != id) return std::nullopt;
  return static_cast<UserIndex>(it - user_ids.begin());
}

std::optional<ItemIndex> Dataset::ItemOf(std::int64_t id) const {
  auto it = std::lower_bound(item_ids.begin(), item_ids.end(), id);
  if (it == item_ids.end() || *it != id) return std::nullopt;
  return static_cast<ItemIndex>(it - item_ids.begin());
}

Dataset IndexRatings(std::span<const ExternalRating> ratings, RatingScale scale) {
  Dataset d;
  for (const ExternalRating& r : ratings) {
    d.user_ids.push_back(r.user);
    d.item_ids.push_back(r.item);
  }
  for (auto* ids : {&d.user_ids, &d.item_ids}) {
    std::sort(ids->begin(), ids->end());
    ids->erase(std::unique(ids->begin(), ids->end()), ids->end());
  }
  std::vector<RatingTriple> triples;
  triples.reserve(ratings.size());
  for (const ExternalRating& r : ratings) {
    triples.push_back({*d.UserOf(r.user), *d.ItemOf(r.item), r.value});
  }
  d.matrix = SparseRatingMatrix::Build(triples, d.user_ids.size(), d.item_ids.size(), scale);
  return d;
}

Dataset LoadDataset(const DatasetDescriptor& descriptor) {
  std::ifstream in(descriptor.path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot read " + descriptor.path.string());
  }
  return IndexRatings(ParseRatings(in, descriptor.format, descriptor.scale),
                      descriptor.scale);
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::optional<double> ParseDouble(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::string Hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, value >>= 4) out[i] = kDigits[value & 0xf];
  return out;
}

void WriteAnonymized(std::ostream& out, const AnonymizedMatrix& anon,
                     const AssignmentMap* sigma) {
  std::string body = "anonrec-v1 " + std::to_string(anon.num_prototypes()) + " " +
                     std::to_string(anon.num_items()) + " " + std::to_string(anon.k) +
                     " " + FormatDouble(anon.scale().lo) + " " +
                     FormatDouble(anon.scale().hi) + "\n";
  for (std::size_t a = 0; a < anon.num_prototypes(); ++a) {
    body += "a:" + std::to_string(a + 1) + " k:" + std::to_string(anon.multiplicities[a]);
    for (const RatingEntry& e : anon.prototypes.row(static_cast<UserIndex>(a))) {
      body += " " + std::to_string(e.item + 1) + "=" + FormatDouble(e.value);
    }
    body += "\n";
  }
  if (sigma) {
    body += "sigma:\n";
    for (std::size_t u = 0; u < sigma->num_users(); ++u) {
      body += std::to_string(u + 1) + " " + std::to_string(sigma->anon_of_user[u] + 1) + "\n";
    }
  }
  out << body << "checksum " << Hex64(Fnv1a64(body)) << "\n";
}

AnonymizedFile ReadAnonymized(std::istream& in) {
  const std::string text = ReadAll(in);
  const std::size_t first_nl = text.find('\n');
  const std::vector<std::string_view> header =
      SplitOn(std::string_view(text).substr(0, first_nl), " ");
  if (header.empty() || header[0] != "anonrec-v1") {
    throw Error(ErrorCode::kFormatVersionMismatch,
                "expected anonrec-v1, found '" +
                    std::string(header.empty() ? "" : header[0]) + "'");
  }
  const std::vector<std::string_view> lines = Lines(VerifiedBody(text));
  if (header.size() != 6) throw Malformed(1, "header needs 6 fields");
  const auto num_anon = ParseInt<std::size_t>(header[1]);
  const auto num_items = ParseInt<std::size_t>(header[2]);
  const auto k = ParseInt<std::size_t>(header[3]);
  const auto lo = ParseDouble(header[4]);
  const auto hi = ParseDouble(header[5]);
  if (!num_anon || !num_items || !k || !lo || !hi) throw Malformed(1, "bad header field");

  AnonymizedFile file;
  file.table.k = *k;
  std::vector<RatingRow> rows;
  std::size_t line = 1;
  for (; line < lines.size() && lines[line] != "sigma:"; ++line) {
    const std::vector<std::string_view> tok = SplitOn(lines[line], " ");
    const auto id = tok.size() >= 2 ? Tagged<std::size_t>(tok[0], "a:") : std::nullopt;
    const auto mult = tok.size() >= 2 ? Tagged<std::size_t>(tok[1], "k:") : std::nullopt;
    if (!id || !mult || *id != rows.size() + 1) {
      throw Malformed(line + 1, "expected 'a:" + std::to_string(rows.size() + 1) + " k:<count>'");
    }
    RatingRow row;
    for (std::size_t t = 2; t < tok.size(); ++t) {
      const auto entry = ItemValue(tok[t]);
      if (!entry || (!row.empty() && entry->item <= row.back().item)) {
        throw Malformed(line + 1, "bad item=value token");
      }
      row.push_back(*entry);
    }
    rows.push_back(std::move(row));
    file.table.multiplicities.push_back(*mult);
  }
  if (rows.size() != *num_anon) throw Malformed(line + 1, "prototype count differs from header");
  try {
    file.table.prototypes = SparseRatingMatrix::FromRows(rows, *num_items, {*lo, *hi});
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedLine, e.what());
  }

  if (line < lines.size()) {
    ++line;  // "sigma:"
    const std::size_t num_users = file.table.num_members();
    AssignmentMap sigma;
    sigma.num_anonymous = *num_anon;
    sigma.anon_of_user.assign(num_users, 0);
    std::vector<bool> seen(num_users, false);
    for (; line < lines.size(); ++line) {
      const std::vector<std::string_view> tok = SplitOn(lines[line], " ");
      const auto user = tok.size() == 2 ? ParseInt<std::size_t>(tok[0]) : std::nullopt;
      const auto anon = tok.size() == 2 ? ParseInt<std::size_t>(tok[1]) : std::nullopt;
      if (!user || !anon || *user < 1 || *user > num_users || seen[*user - 1] ||
          *anon < 1 || *anon > *num_anon) {
        throw Malformed(line + 1, "bad sigma entry");
      }
      seen[*user - 1] = true;
      sigma.anon_of_user[*user - 1] = static_cast<AnonIndex>(*anon - 1);
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end() ||
        sigma.PreimageSizes() != file.table.multiplicities) {
      throw Malformed(line, "sigma does not match the multiplicities");
    }
    file.sigma = std::move(sigma);
  }
  return file;
}

void WriteSimilarity(std::ostream& out, const ItemSimilarityMatrix& sims) {
  const std::size_t m = sims.num_items();
  std::string body = "anonrec-sim-v1 " + std::to_string(m) + " " +
                     (sims.source() == SimilaritySource::kRaw ? "raw" : "anonymized") + "\n";
  for (std::size_t i = 0; i < m; ++i) {
    const auto& mean = sims.item_means()[i];
    body += "i:" + std::to_string(i + 1) + " mean=" + (mean ? FormatDouble(*mean) : "na");
    for (std::size_t j = i; j < m; ++j) {
      const auto a = static_cast<ItemIndex>(i), b = static_cast<ItemIndex>(j);
      if (sims.defined(a, b)) body += " " + std::to_string(j + 1) + "=" + FormatDouble(sims.at(a, b));
    }
    body += "\n";
  }
  out << body << "checksum " << Hex64(Fnv1a64(body)) << "\n";
}

ItemSimilarityMatrix ReadSimilarity(std::istream& in) {
  const std::string text = ReadAll(in);
  const std::vector<std::string_view> header =
      SplitOn(std::string_view(text).substr(0, text.find('\n')), " ");
  if (header.empty() || header[0] != "anonrec-sim-v1") {
    throw Error(ErrorCode::kFormatVersionMismatch, "expected anonrec-sim-v1");
  }
  const std::vector<std::string_view> lines = Lines(VerifiedBody(text));
  const auto m = header.size() == 3 ? ParseInt<std::size_t>(header[1]) : std::nullopt;
  if (!m || (header[2] != "raw" && header[2] != "anonymized") || lines.size() != *m + 1) {
    throw Malformed(1, "bad similarity header");
  }
  std::vector<std::optional<double>> means(*m);
  std::vector<std::vector<RatingEntry>> pairs(*m);
  for (std::size_t i = 0; i < *m; ++i) {
    const std::vector<std::string_view> tok = SplitOn(lines[i + 1], " ");
    const auto id = tok.size() >= 2 ? Tagged<std::size_t>(tok[0], "i:") : std::nullopt;
    if (!id || *id != i + 1 || tok[1].substr(0, 5) != "mean=") {
      throw Malformed(i + 2, "expected 'i:" + std::to_string(i + 1) + " mean=...'");
    }
    if (tok[1] != "mean=na") {
      means[i] = ParseDouble(tok[1].substr(5));
      if (!means[i]) throw Malformed(i + 2, "bad mean");
    }
    for (std::size_t t = 2; t < tok.size(); ++t) {
      const auto entry = ItemValue(tok[t]);
      if (!entry || entry->item < i || entry->item >= *m) throw Malformed(i + 2, "bad pair");
      pairs[i].push_back(*entry);
    }
  }
  ItemSimilarityMatrix sims(*m, header[2] == "raw" ? SimilaritySource::kRaw
                                                   : SimilaritySource::kAnonymized,
                            std::move(means));
  for (std::size_t i = 0; i < *m; ++i) {
    for (const RatingEntry& e : pairs[i]) sims.Set(static_cast<ItemIndex>(i), e.item, e.value, true);
  }
  return sims;
}

void WriteResultCsv(std::ostream& out, const ExperimentResult& result) {
  out << "model,k,n,rmse,rmse_sd,fallback_rate\n";
  for (const ResultRow& r : result.rows) {
    out << ModelName(r.model) << ',' << r.k << ',' << r.n << ',' << FormatDouble(r.rmse)
        << ',' << FormatDouble(r.rmse_sd) << ',' << FormatDouble(r.fallback_rate) << '\n';
  }
}

}  // namespace anonrec
