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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "anonrec/manifest.h"
#include "json.hpp"
#include "test_util.h"

namespace anonrec {
namespace {

using ::anonrec::testing::RandomMatrix;
using ::anonrec::testing::Toy;

std::vector<ExternalRating> Parse(const std::string& text, DatasetFormat f) {
  std::istringstream in(text);
  return ParseRatings(in, f);
}

TEST(ParseTest, MovieLens100kLine) {
  const auto r = Parse("1\t1\t5\t874965758\n", DatasetFormat::kMovieLens100k);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (ExternalRating{1, 1, 5.0}));
}

TEST(ParseTest, MovieLens100kWrongDelimiter) {
  try {
    Parse("1,1,5\n", DatasetFormat::kMovieLens100k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLine);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
  }
}

TEST(ParseTest, ErrorsNameTheLine) {
  try {
    Parse("1\t1\t5\t0\n2\t3\tx\t0\n", DatasetFormat::kMovieLens100k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLine);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_ANONREC_ERROR(Parse("1\t1\t7\t0\n", DatasetFormat::kMovieLens100k),
                       ErrorCode::kRatingOutOfScale);
}

TEST(ParseTest, MovieLens1m) {
  const auto r = Parse("1::1193::5::978300760\n2::7::3.5::1\n", DatasetFormat::kMovieLens1m);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (ExternalRating{1, 1193, 5.0}));
  EXPECT_EQ(r[1].value, 3.5);
  EXPECT_TRUE(Parse("", DatasetFormat::kMovieLens1m).empty());
  EXPECT_ANONREC_ERROR(Parse("1:1:5:0\n", DatasetFormat::kMovieLens1m),
                       ErrorCode::kMalformedLine);
}

TEST(ParseTest, CsvTriples) {
  const auto r = Parse("user,item,rating\n3,4,2\n5,6,1,99\n", DatasetFormat::kCsvTriples);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1], (ExternalRating{5, 6, 1.0}));
  EXPECT_ANONREC_ERROR(Parse("3,4\n", DatasetFormat::kCsvTriples), ErrorCode::kMalformedLine);
}

TEST(ParseTest, FormatNames) {
  for (DatasetFormat f : {DatasetFormat::kMovieLens100k, DatasetFormat::kMovieLens1m,
                          DatasetFormat::kCsvTriples}) {
    EXPECT_EQ(ParseDatasetFormat(DatasetFormatName(f)), f);
  }
  EXPECT_FALSE(ParseDatasetFormat("netflix").has_value());
}

TEST(IndexRatingsTest, DenseRemapInIdOrder) {
  const std::vector<ExternalRating> r = {{50, 7, 4}, {10, 300, 2}, {50, 300, 5}};
  const Dataset d = IndexRatings(r, {});
  EXPECT_EQ(d.user_ids, (std::vector<std::int64_t>{10, 50}));
  EXPECT_EQ(d.item_ids, (std::vector<std::int64_t>{7, 300}));
  EXPECT_EQ(d.matrix.Find(1, 0), 4.0);
  EXPECT_EQ(d.UserOf(50), 1u);
  EXPECT_FALSE(d.ItemOf(8).has_value());
  const std::vector<ExternalRating> dup = {{1, 1, 4}, {1, 1, 3}};
  EXPECT_ANONREC_ERROR(IndexRatings(dup, {}), ErrorCode::kDuplicateEntry);
}

TEST(LoadDatasetTest, MissingFile) {
  EXPECT_ANONREC_ERROR(LoadDataset({DatasetFormat::kMovieLens100k, "/nonexistent/u.data", {}}),
                       ErrorCode::kIoError);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(3.0), "3");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  for (double v : {10.0 / 3.0, 1e-300, -2.5, 0.81373347120673496489}) {
    EXPECT_EQ(*ParseDouble(FormatDouble(v)), v);
  }
  EXPECT_FALSE(ParseDouble("1.5x").has_value());
  EXPECT_FALSE(ParseDouble("").has_value());
}

TEST(Fnv1aTest, KnownVectors) {
  EXPECT_EQ(Hex64(Fnv1a64("")), "cbf29ce484222325");
  EXPECT_EQ(Hex64(Fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(AnonymizedFormatTest, RoundTripWithAndWithoutSigma) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SparseRatingMatrix r = RandomMatrix(seed, 20, 9, 0.4);
    const Anonymization a = OkaAnonymize(r, 3, seed);
    for (bool with_sigma : {false, true}) {
      std::stringstream buf;
      WriteAnonymized(buf, a.table, with_sigma ? &a.sigma : nullptr);
      const AnonymizedFile f = ReadAnonymized(buf);
      EXPECT_EQ(f.table, a.table);
      EXPECT_EQ(f.sigma.has_value(), with_sigma);
      if (with_sigma) EXPECT_EQ(*f.sigma, a.sigma);
    }
  }
}

TEST(AnonymizedFormatTest, ToyLayout) {
  AnonymizedMatrix t;
  const std::vector<RatingTriple> triples = {{0, 0, 4.5}, {0, 1, 3}, {1, 2, 10.0 / 3.0}};
  t.prototypes = BuildMatrix(triples, 2, 3);
  t.multiplicities = {2, 2};
  t.k = 2;
  std::ostringstream out;
  WriteAnonymized(out, t);
  const std::string body =
      "anonrec-v1 2 3 2 1 5\n"
      "a:1 k:2 1=4.5 2=3\n"
      "a:2 k:2 3=3.3333333333333335\n";
  EXPECT_EQ(out.str(), body + "checksum " + Hex64(Fnv1a64(body)) + "\n");
}

TEST(AnonymizedFormatTest, Errors) {
  const Anonymization a = OkaAnonymize(Toy(), 2, 1);
  std::ostringstream out;
  WriteAnonymized(out, a.table, &a.sigma);
  const std::string good = out.str();

  std::string v2 = good;
  v2.replace(0, 10, "anonrec-v2");
  std::istringstream in_v2(v2);
  EXPECT_ANONREC_ERROR(ReadAnonymized(in_v2), ErrorCode::kFormatVersionMismatch);

  std::string tampered = good;
  tampered[tampered.find("k:2") + 2] = '3';
  std::istringstream in_t(tampered);
  EXPECT_ANONREC_ERROR(ReadAnonymized(in_t), ErrorCode::kChecksumMismatch);

  std::istringstream in_cut(good.substr(0, good.find("checksum")));
  EXPECT_ANONREC_ERROR(ReadAnonymized(in_cut), ErrorCode::kChecksumMismatch);
}

TEST(SimilarityFormatTest, RoundTrip) {
  const SparseRatingMatrix r = RandomMatrix(3, 30, 12, 0.4);
  for (const ItemSimilarityMatrix& s :
       {ComputeItemSimilarity(r), ComputeItemSimilarity(OkaAnonymize(r, 4, 2).table)}) {
    std::stringstream buf;
    WriteSimilarity(buf, s);
    EXPECT_EQ(ReadSimilarity(buf), s);
  }
  std::istringstream bad("anonrec-sim-v0 1 raw\n");
  EXPECT_ANONREC_ERROR(ReadSimilarity(bad), ErrorCode::kFormatVersionMismatch);
}

TEST(ResultCsvTest, Layout) {
  ExperimentResult res;
  res.rows.push_back({ModelId::kCase1Reg, 0, 0, 0.5, 0.25, 0.0, 0});
  res.rows.push_back({ModelId::kCase2aUr, 4, 7, 1.0 / 3.0, 0.0, 0.125, 2});
  std::ostringstream out;
  WriteResultCsv(out, res);
  EXPECT_EQ(out.str(),
            "model,k,n,rmse,rmse_sd,fallback_rate\n"
            "Case1/REG,0,0,0.5,0.25,0\n"
            "Case2A/UR,4,7,0.3333333333333333,0,0.125\n");
}

TEST(ManifestTest, JsonFields) {
  RunManifest m;
  m.command = "anonymize";
  m.arguments = {"--k", "5"};
  m.config["k"] = "5";
  m.seeds = {1, 2};
  m.dataset_checksum = "00";
  m.started_at = UtcNow();
  m.finished_at = m.started_at;
  const auto j = nlohmann::json::parse(m.ToJson());
  EXPECT_EQ(j["command"], "anonymize");
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["seeds"][1], 2);
  EXPECT_EQ(j["config"]["k"], "5");
  EXPECT_TRUE(j["timestamps"].contains("started_at"));

  const auto dir = std::filesystem::temp_directory_path() / "anonrec_manifest_test";
  std::filesystem::create_directories(dir);
  const auto path = WriteManifestBeside(dir / "out.txt", m);
  EXPECT_EQ(path.filename(), "out.txt.manifest.json");
  EXPECT_TRUE(std::filesystem::exists(path));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace anonrec
