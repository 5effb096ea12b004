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

#include "cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "anonrec/io.h"
#include "json.hpp"
#include "test_util.h"

namespace anonrec::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("anonrec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const SparseRatingMatrix r = anonrec::testing::RandomMatrix(17, 40, 15, 0.5);
    std::ofstream out(dir_ / "u.data");
    for (const RatingTriple& t : r.Triples()) {
      out << t.user + 101 << '\t' << t.item + 1 << '\t' << t.value << "\t0\n";
    }
    data_ = (dir_ / "u.data").string();
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome Run(std::vector<std::string> args) {
    args.insert(args.begin(), "anonrec");
    std::ostringstream out, err;
    const int code = cli::Run(args, out, err);
    return {code, out.str(), err.str()};
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string data_;
};

TEST_F(CliTest, AnonymizeThenAudit) {
  const Outcome a = Run({"anonymize", "--input", data_, "--k", "5", "--seed", "3",
                         "--output", Path("a.txt")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_TRUE(fs::exists(Path("a.txt.manifest.json")));
  const Outcome audit = Run({"audit", "--anon", Path("a.txt")});
  ASSERT_EQ(audit.code, 0) << audit.err;
  const auto pos = audit.out.find("satisfied_k=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_GE(std::stoi(audit.out.substr(pos + 12)), 5);
}

TEST_F(CliTest, AuditRevealedNeedsSigma) {
  ASSERT_EQ(Run({"anonymize", "--input", data_, "--k", "4", "--output", Path("a.txt")}).code, 0);
  const Outcome no_sigma = Run({"audit", "--anon", Path("a.txt"), "--revealed", "1"});
  EXPECT_NE(no_sigma.code, 0);
  EXPECT_NE(no_sigma.err.find("MissingAssignmentMap"), std::string::npos);
  ASSERT_EQ(Run({"anonymize", "--input", data_, "--k", "4", "--output", Path("s.txt"),
                 "--emit-sigma"}).code, 0);
  const Outcome ok = Run({"audit", "--anon", Path("s.txt"), "--revealed", "1,2"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("residual_min="), std::string::npos);
}

TEST_F(CliTest, KZeroIsRejected) {
  const Outcome o = Run({"anonymize", "--input", data_, "--k", "0", "--output", Path("a.txt")});
  EXPECT_NE(o.code, 0);
  EXPECT_NE(o.err.find("InvalidK"), std::string::npos) << o.err;
}

TEST_F(CliTest, UnknownFlagIsRejected) {
  const Outcome o = Run({"anonymize", "--input", data_, "--k", "2", "--output", Path("a.txt"),
                         "--frobnicate"});
  EXPECT_NE(o.code, 0);
  EXPECT_FALSE(fs::exists(Path("a.txt")));
  EXPECT_NE(Run({"nonsense"}).code, 0);
  EXPECT_NE(Run({}).code, 0);
}

TEST_F(CliTest, EvalCase1IsByteIdentical) {
  const std::vector<std::string> base = {"eval-case1", "--input", data_, "--k-min", "2",
                                         "--k-max", "4", "--trials", "2", "--seed", "9"};
  auto first = base, second = base;
  first.insert(first.end(), {"--out-csv", Path("one.csv")});
  second.insert(second.end(), {"--out-csv", Path("two.csv")});
  ASSERT_EQ(Run(first).code, 0);
  ASSERT_EQ(Run(second).code, 0);
  const std::string csv = Slurp(Path("one.csv"));
  EXPECT_EQ(csv, Slurp(Path("two.csv")));
  EXPECT_EQ(csv.rfind("model,k,n,rmse,rmse_sd,fallback_rate\n", 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);

  auto one = nlohmann::json::parse(Slurp(Path("one.csv.manifest.json")));
  auto two = nlohmann::json::parse(Slurp(Path("two.csv.manifest.json")));
  for (auto* j : {&one, &two}) {
    j->erase("timestamps");
    j->erase("arguments");
  }
  EXPECT_EQ(one, two);
  EXPECT_EQ(one["seeds"][0], 9);
  EXPECT_EQ(one["seeds"].size(), 3u);  // master + two trials
}

TEST_F(CliTest, EvalCase2) {
  const Outcome o = Run({"eval-case2", "--input", data_, "--k-list", "2,4", "--n-min", "1",
                         "--n-max", "3", "--draws", "2", "--out-csv", Path("c2.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(Slurp(Path("c2.csv")).find("Case2A/UR,4,3,"), std::string::npos);
}

TEST_F(CliTest, AnalyzeWritesReports) {
  const Outcome o = Run({"analyze", "--input", data_, "--k-list", "2,3", "--bins", "8",
                         "--out-dir", Path("an")});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const char* f : {"e_avg.csv", "e_var.csv", "histograms.csv", "similarity_signs.csv",
                        "analysis.manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "an" / f)) << f;
  }
  EXPECT_EQ(Slurp(dir_ / "an" / "e_avg.csv").rfind("k,e_avg,", 0), 0u);
}

TEST_F(CliTest, SimilarityFromRawAndAnonymized) {
  ASSERT_EQ(Run({"similarity", "--input", data_, "--output", Path("raw.sim")}).code, 0);
  ASSERT_EQ(Run({"anonymize", "--input", data_, "--k", "3", "--output", Path("a.txt")}).code, 0);
  ASSERT_EQ(Run({"similarity", "--anon", Path("a.txt"), "--output", Path("anon.sim")}).code, 0);
  std::ifstream in(Path("anon.sim"));
  EXPECT_EQ(ReadSimilarity(in).source(), SimilaritySource::kAnonymized);
  EXPECT_NE(Run({"similarity", "--output", Path("x.sim")}).code, 0);
}

TEST_F(CliTest, PredictModels) {
  ASSERT_EQ(Run({"anonymize", "--input", data_, "--k", "3", "--output", Path("a.txt")}).code, 0);
  ASSERT_EQ(Run({"anonymize", "--input", data_, "--k", "3", "--output", Path("s.txt"),
                 "--emit-sigma"}).code, 0);
  const Outcome reg = Run({"predict", "--input", data_, "--model", "Case1/REG", "--user", "101",
                           "--item", "2"});
  ASSERT_EQ(reg.code, 0) << reg.err;
  EXPECT_EQ(reg.out.rfind("prediction=", 0), 0u);
  EXPECT_EQ(Run({"predict", "--anon", Path("a.txt"), "--model", "Case1A/UR", "--ratings",
                 "1=5,3=2", "--item", "2"}).code, 0);
  EXPECT_EQ(Run({"predict", "--anon", Path("a.txt"), "--model", "Case1A/AI", "--anon-id", "1",
                 "--item", "2"}).code, 0);
  EXPECT_EQ(Run({"predict", "--anon", Path("s.txt"), "--model", "Case1A/AI", "--user", "1",
                 "--item", "2"}).code, 0);
  const Outcome no_sigma = Run({"predict", "--anon", Path("a.txt"), "--model", "Case1A/AI",
                                "--user", "1", "--item", "2"});
  EXPECT_NE(no_sigma.code, 0);
  EXPECT_NE(no_sigma.err.find("MissingAssignmentMap"), std::string::npos);
  EXPECT_EQ(Run({"predict", "--input", data_, "--model", "BASELINE", "--item", "2"}).code, 0);
  EXPECT_NE(Run({"predict", "--input", data_, "--model", "Case9", "--item", "2"}).code, 0);
  EXPECT_NE(Run({"predict", "--input", data_, "--model", "Case1/REG", "--user", "1",
                 "--item", "2"}).code, 0);
}

TEST_F(CliTest, SeedFromEnvironment) {
  ::setenv("ANONREC_SEED", "4242", 1);
  const Outcome o = Run({"anonymize", "--input", data_, "--k", "2", "--output", Path("a.txt")});
  ::unsetenv("ANONREC_SEED");
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(Slurp(Path("a.txt.manifest.json")));
  EXPECT_EQ(j["seeds"][0], 4242);
}

TEST_F(CliTest, MissingInputFile) {
  const Outcome o = Run({"anonymize", "--input", Path("nope"), "--k", "2", "--output",
                         Path("a.txt")});
  EXPECT_NE(o.code, 0);
  EXPECT_NE(o.err.find("IoError"), std::string::npos) << o.err;
}

}  // namespace
}  // namespace anonrec::cli
