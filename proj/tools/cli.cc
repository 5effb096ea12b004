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

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "anonrec/anonymizer.h"
#include "anonrec/error.h"
#include "anonrec/evaluation.h"
#include "anonrec/io.h"
#include "anonrec/manifest.h"
#include "anonrec/predictor.h"
#include "anonrec/similarity.h"

namespace anonrec::cli {

namespace {

namespace fs = std::filesystem;

std::uint64_t DefaultSeed() {
  if (const char* env = std::getenv("ANONREC_SEED")) {
    std::uint64_t seed = 0;
    std::istringstream in(env);
    if (in >> seed && in.eof()) return seed;
    throw Error(ErrorCode::kInvalidArgument, "ANONREC_SEED must be an unsigned integer");
  }
  return 1;
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::int64_t ToInt(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bad " + what + ": '" + text + "'");
  }
  return v;
}

std::vector<std::size_t> ParseSizeList(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const std::string& p : Split(text, ',')) {
    const std::int64_t v = ToInt(p, what);
    if (v < 1) throw Error(ErrorCode::kInvalidArgument, what + " entries must be >= 1");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty " + what);
  return out;
}

std::vector<std::size_t> Range(std::int64_t lo, std::int64_t hi, const std::string& what) {
  if (lo < 1 || hi < lo) {
    throw Error(ErrorCode::kInvalidArgument, what + " range must satisfy 1 <= min <= max");
  }
  std::vector<std::size_t> out;
  for (std::int64_t v = lo; v <= hi; ++v) out.push_back(static_cast<std::size_t>(v));
  return out;
}

struct DatasetArgs {
  std::string path;
  std::string format = "movielens-100k";
  double lo = 1.0;
  double hi = 5.0;

  void Attach(CLI::App* app, bool required) {
    auto* opt = app->add_option("--input", path, "Rating file");
    if (required) opt->required();
    app->add_option("--format", format, "movielens-100k | movielens-1m | csv-triples");
    app->add_option("--scale-lo", lo, "Lowest rating on the scale");
    app->add_option("--scale-hi", hi, "Highest rating on the scale");
  }

  DatasetDescriptor Descriptor() const {
    const auto f = ParseDatasetFormat(format);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "unknown format '" + format + "'");
    return {*f, path, {lo, hi}};
  }

  void Describe(RunManifest& m) const {
    m.config["input"] = path;
    m.config["format"] = format;
    m.config["scale"] = FormatDouble(lo) + "," + FormatDouble(hi);
    m.dataset_checksum = FileChecksum(path);
  }
};

AnonymizedFile LoadAnonymized(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  return ReadAnonymized(in);
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

std::string FallbackName(FallbackLevel level) {
  switch (level) {
    case FallbackLevel::kFull: return "full";
    case FallbackLevel::kItemMean: return "item-mean";
    case FallbackLevel::kGlobalMean: return "global-mean";
  }
  return "?";
}

std::optional<ModelId> ModelFromFlag(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (ModelId id : {ModelId::kCase1Reg, ModelId::kCase1aUr, ModelId::kCase1aAi,
                     ModelId::kCase2Ur, ModelId::kCase2aUr, ModelId::kBaseline}) {
    std::string candidate(ModelName(id));
    std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (candidate == name) return id;
  }
  return std::nullopt;
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int Run(const std::vector<std::string>& args) {
    CLI::App app{"k-anonymized rating matrices and item-based collaborative filtering",
                 "anonrec"};
    app.require_subcommand(1);
    seed_ = DefaultSeed();
    AddAnonymize(app);
    AddSimilarity(app);
    AddPredict(app);
    AddEvalCase1(app);
    AddEvalCase2(app);
    AddAnalyze(app);
    AddAudit(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out_, err_);
    }
    manifest_.arguments.assign(args.begin() + (args.empty() ? 0 : 1), args.end());
    manifest_.started_at = UtcNow();
    try {
      action_();
    } catch (const Error& e) {
      err_ << "anonrec: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err_ << "anonrec: " << e.what() << "\n";
      return 1;
    }
    return 0;
  }

 private:
  void Finish(const fs::path& output) {
    manifest_.finished_at = UtcNow();
    manifest_.seeds.insert(manifest_.seeds.begin(), seed_);
    WriteManifestBeside(output, manifest_);
  }

  void AddSeed(CLI::App* sub) {
    sub->add_option("--seed", seed_, "Master seed (default: $ANONREC_SEED or 1)");
  }

  void AddAnonymize(CLI::App& app) {
    auto* sub = app.add_subcommand("anonymize", "k-anonymize a rating matrix");
    data_.Attach(sub, true);
    sub->add_option("--k", k_, "Anonymity parameter")->required();
    AddSeed(sub);
    sub->add_option("--output", output_, "anonrec-v1 file to write")->required();
    sub->add_flag("--emit-sigma", emit_sigma_, "Include the user -> anonymous id map");
    sub->callback([this] {
      action_ = [this] {
        manifest_.command = "anonymize";
        const Dataset ds = LoadDataset(data_.Descriptor());
        if (k_ < 1) throw Error(ErrorCode::kInvalidK, "k=" + std::to_string(k_) + " must be >= 1");
        const Anonymization anon = OkaAnonymize(ds.matrix, static_cast<std::size_t>(k_), seed_);
        std::ofstream out = OpenOutput(output_);
        WriteAnonymized(out, anon.table, emit_sigma_ ? &anon.sigma : nullptr);
        out.close();
        data_.Describe(manifest_);
        manifest_.config["k"] = std::to_string(k_);
        manifest_.config["emit_sigma"] = emit_sigma_ ? "true" : "false";
        Finish(output_);
        out_ << "prototypes=" << anon.table.num_prototypes()
             << " satisfied_k=" << AuditKAnonymity(anon.table).satisfied_k << "\n";
      };
    });
  }

  void AddSimilarity(CLI::App& app) {
    auto* sub = app.add_subcommand("similarity", "Item-item Pearson similarity matrix");
    data_.Attach(sub, false);
    sub->add_option("--anon", anon_path_, "anonrec-v1 file instead of --input");
    sub->add_option("--output", output_, "anonrec-sim-v1 file to write")->required();
    sub->add_flag("--unweighted", unweighted_, "Count each prototype row once");
    sub->callback([this] {
      action_ = [this] {
        manifest_.command = "similarity";
        ItemSimilarityMatrix sims;
        if (!anon_path_.empty()) {
          sims = ComputeItemSimilarity(
              LoadAnonymized(anon_path_).table,
              unweighted_ ? RowWeighting::kUniform : RowWeighting::kMultiplicity);
          manifest_.config["anon"] = anon_path_;
          manifest_.dataset_checksum = FileChecksum(anon_path_);
        } else if (!data_.path.empty()) {
          sims = ComputeItemSimilarity(LoadDataset(data_.Descriptor()).matrix);
          data_.Describe(manifest_);
        } else {
          throw Error(ErrorCode::kInvalidArgument, "one of --input or --anon is required");
        }
        manifest_.config["unweighted"] = unweighted_ ? "true" : "false";
        std::ofstream out = OpenOutput(output_);
        WriteSimilarity(out, sims);
        out.close();
        Finish(output_);
        const SignCounts signs = CountSimilaritySigns(sims);
        out_ << "items=" << sims.num_items() << " negative=" << signs.negative
             << " zero=" << signs.zero << " positive=" << signs.positive << "\n";
      };
    });
  }

  void AddPredict(CLI::App& app) {
    auto* sub = app.add_subcommand("predict", "Predict one rating");
    data_.Attach(sub, false);
    sub->add_option("--anon", anon_path_, "anonrec-v1 training input instead of --input");
    sub->add_option("--model", model_, "Case1/REG | Case1A/UR | Case1A/AI | Case2/UR | Case2A/UR | BASELINE")
        ->required();
    sub->add_option("--user", user_, "User id (raw: dataset id; anonymized: 1-based sigma index)");
    sub->add_option("--anon-id", anon_id_, "1-based anonymous identity");
    sub->add_option("--ratings", ratings_, "Revealed ratings 'item=value,...'");
    sub->add_option("--item", item_, "Target item id")->required();
    sub->add_flag("--unweighted", unweighted_, "Count each prototype row once");
    sub->callback([this] { action_ = [this] { Predict(); }; });
  }

  void Predict() {
    const auto id = ModelFromFlag(model_);
    if (!id) throw Error(ErrorCode::kInvalidArgument, "unknown model '" + model_ + "'");
    const bool anonymized = !anon_path_.empty();
    if (anonymized == !data_.path.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "give exactly one of --input or --anon");
    }
    std::optional<Dataset> ds;
    std::optional<AnonymizedFile> file;
    std::shared_ptr<const SparseRatingMatrix> raw;
    std::shared_ptr<const AnonymizedMatrix> anon;
    if (anonymized) {
      file = LoadAnonymized(anon_path_);
      anon = std::make_shared<const AnonymizedMatrix>(file->table);
    } else {
      ds = LoadDataset(data_.Descriptor());
      raw = std::make_shared<const SparseRatingMatrix>(ds->matrix);
    }
    // Items: dataset ids for raw inputs, 1-based indices for anonymized ones.
    auto item_index = [&](std::int64_t id) -> ItemIndex {
      if (ds) {
        const auto i = ds->ItemOf(id);
        if (!i) throw Error(ErrorCode::kIndexOutOfRange, "unknown item id " + std::to_string(id));
        return *i;
      }
      if (id < 1 || static_cast<std::size_t>(id) > anon->num_items()) {
        throw Error(ErrorCode::kIndexOutOfRange, "item " + std::to_string(id));
      }
      return static_cast<ItemIndex>(id - 1);
    };
    const ItemIndex target = item_index(item_);
    const RowWeighting weighting =
        unweighted_ ? RowWeighting::kUniform : RowWeighting::kMultiplicity;
    const TrainedModel model = anonymized ? TrainedModel::Train(*id, anon, weighting)
                                          : TrainedModel::Train(*id, raw);

    PredictionInput input = NoInput{};
    switch (*id) {
      case ModelId::kCase1Reg: {
        if (!user_) throw Error(ErrorCode::kInvalidArgument, "Case1/REG needs --user");
        const auto u = ds->UserOf(*user_);
        if (!u) throw Error(ErrorCode::kUnknownUser, "user id " + std::to_string(*user_));
        input = UserIdentity{*u};
        break;
      }
      case ModelId::kCase1aAi: {
        if (anon_id_) {
          if (*anon_id_ < 1) throw Error(ErrorCode::kIndexOutOfRange, "anonymous id");
          input = AnonymousIdentity{static_cast<AnonIndex>(*anon_id_ - 1)};
        } else if (user_) {
          if (!file->sigma) {
            throw Error(ErrorCode::kMissingAssignmentMap,
                        "the anonymized file carries no sigma section");
          }
          if (*user_ < 1) throw Error(ErrorCode::kUnknownUser, std::to_string(*user_));
          input = AnonymousIdentity{(*file->sigma)(static_cast<UserIndex>(*user_ - 1))};
        } else {
          throw Error(ErrorCode::kInvalidArgument, "Case1A/AI needs --anon-id or --user");
        }
        break;
      }
      case ModelId::kCase1aUr:
      case ModelId::kCase2Ur:
      case ModelId::kCase2aUr: {
        RatingRow row;
        for (const std::string& tok : Split(ratings_, ',')) {
          const std::size_t eq = tok.find('=');
          const auto value = eq == std::string::npos ? std::nullopt
                                                     : ParseDouble(tok.substr(eq + 1));
          if (!value) throw Error(ErrorCode::kInvalidArgument, "bad rating '" + tok + "'");
          row.push_back({item_index(ToInt(tok.substr(0, eq), "item")), *value});
        }
        std::sort(row.begin(), row.end(),
                  [](const RatingEntry& a, const RatingEntry& b) { return a.item < b.item; });
        input = UserRatings{std::move(row)};
        break;
      }
      case ModelId::kBaseline:
        break;
    }
    const PredictedRating r = model.Predict(input, target);
    out_ << "prediction=" << FormatDouble(r.value) << " fallback=" << FallbackName(r.fallback)
         << "\n";
  }

  void AddEvalCase1(CLI::App& app) {
    auto* sub = app.add_subcommand("eval-case1", "RMSE w.r.t. k under rating holdout");
    data_.Attach(sub, true);
    sub->add_option("--k-min", k_min_, "Smallest k");
    sub->add_option("--k-max", k_max_, "Largest k");
    sub->add_option("--trials", trials_, "Random holdouts to average");
    sub->add_option("--folds", folds_, "Use f-fold cross validation instead (f >= 2)");
    sub->add_option("--holdout", holdout_, "Held-out share of ratings");
    sub->add_option("--input-fraction", input_fraction_,
                    "Share of each user's training ratings revealed to Case1A/UR");
    sub->add_flag("--unweighted", unweighted_, "Count each prototype row once");
    AddSeed(sub);
    sub->add_option("--out-csv", output_, "Result table")->required();
    sub->callback([this] {
      action_ = [this] {
        manifest_.command = "eval-case1";
        ExperimentConfig c = ExperimentConfig::Case1Defaults(seed_);
        c.k_values = Range(k_min_, k_max_, "k");
        c.trials = static_cast<std::size_t>(std::max<std::int64_t>(trials_, 0));
        c.cv_folds = static_cast<std::size_t>(std::max<std::int64_t>(folds_, 0));
        c.holdout_fraction = holdout_;
        c.prediction_input_fraction = input_fraction_;
        c.weighting = unweighted_ ? RowWeighting::kUniform : RowWeighting::kMultiplicity;
        RunAndWrite(c);
      };
    });
  }

  void AddEvalCase2(CLI::App& app) {
    auto* sub = app.add_subcommand("eval-case2", "RMSE w.r.t. N under user holdout");
    data_.Attach(sub, true);
    sub->add_option("--k-list", k_list_, "Comma-separated k values");
    sub->add_option("--n-min", n_min_, "Smallest prediction-input size");
    sub->add_option("--n-max", n_max_, "Largest prediction-input size");
    sub->add_option("--draws", draws_, "Input draws per (user, N)");
    sub->add_option("--trials", trials2_, "User splits to average");
    sub->add_option("--holdout", holdout_, "Held-out share of users");
    sub->add_flag("--unweighted", unweighted_, "Count each prototype row once");
    AddSeed(sub);
    sub->add_option("--out-csv", output_, "Result table")->required();
    sub->callback([this] {
      action_ = [this] {
        manifest_.command = "eval-case2";
        ExperimentConfig c = ExperimentConfig::Case2Defaults(seed_);
        c.k_values = ParseSizeList(k_list_, "k-list");
        c.n_values = Range(n_min_, n_max_, "N");
        c.input_draws = static_cast<std::size_t>(std::max<std::int64_t>(draws_, 0));
        c.trials = static_cast<std::size_t>(std::max<std::int64_t>(trials2_, 0));
        c.holdout_fraction = holdout_;
        c.weighting = unweighted_ ? RowWeighting::kUniform : RowWeighting::kMultiplicity;
        RunAndWrite(c);
      };
    });
  }

  void RunAndWrite(const ExperimentConfig& c) {
    const Dataset ds = LoadDataset(data_.Descriptor());
    const ExperimentResult result = c.protocol == Protocol::kCase1
                                        ? RunCase1Experiment(ds.matrix, c)
                                        : RunCase2Experiment(ds.matrix, c);
    std::ofstream out = OpenOutput(output_);
    WriteResultCsv(out, result);
    out.close();
    data_.Describe(manifest_);
    DescribeConfig(c);
    manifest_.seeds = result.trial_seeds;
    Finish(output_);
    out_ << "rows=" << result.rows.size() << " written to " << output_ << "\n";
  }

  void DescribeConfig(const ExperimentConfig& c) {
    auto join = [](const std::vector<std::size_t>& xs) {
      std::string s;
      for (std::size_t x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
      return s;
    };
    manifest_.config["k_values"] = join(c.k_values);
    if (!c.n_values.empty()) manifest_.config["n_values"] = join(c.n_values);
    manifest_.config["trials"] = std::to_string(c.num_trials());
    manifest_.config["cv_folds"] = std::to_string(c.cv_folds);
    manifest_.config["input_draws"] = std::to_string(c.input_draws);
    manifest_.config["holdout_fraction"] = FormatDouble(c.holdout_fraction);
    manifest_.config["prediction_input_fraction"] = FormatDouble(c.prediction_input_fraction);
    manifest_.config["weighting"] =
        c.weighting == RowWeighting::kUniform ? "uniform" : "multiplicity";
    manifest_.config["histogram_bins"] = std::to_string(c.histogram_bins);
    manifest_.config["trial_seed_rule"] = "DeriveSeed(master, {trial})";
  }

  void AddAnalyze(CLI::App& app) {
    auto* sub = app.add_subcommand("analyze", "Item-mean drift, similarity histograms, error spread");
    data_.Attach(sub, true);
    sub->add_option("--k-list", k_list_analyze_, "Comma-separated k values");
    sub->add_option("--bins", bins_, "Histogram bins over [-1, 1]");
    sub->add_option("--trials", trials2_, "Random holdouts to average");
    sub->add_flag("--unweighted", unweighted_, "Count each prototype row once");
    AddSeed(sub);
    sub->add_option("--out-dir", output_, "Directory for the CSV reports")->required();
    sub->callback([this] { action_ = [this] { Analyze(); }; });
  }

  void Analyze() {
    manifest_.command = "analyze";
    ExperimentConfig c = ExperimentConfig::Case1Defaults(seed_);
    c.k_values = ParseSizeList(k_list_analyze_, "k-list");
    c.trials = static_cast<std::size_t>(std::max<std::int64_t>(trials2_, 0));
    if (bins_ < 1) throw Error(ErrorCode::kInvalidArgument, "--bins must be >= 1");
    c.histogram_bins = static_cast<std::size_t>(bins_);
    c.weighting = unweighted_ ? RowWeighting::kUniform : RowWeighting::kMultiplicity;
    const Dataset ds = LoadDataset(data_.Descriptor());
    const AnalysisReport report = RunAnalysis(ds.matrix, c);

    const fs::path dir = output_;
    fs::create_directories(dir);
    {
      std::ofstream out = OpenOutput(dir / "e_avg.csv");
      out << "k,e_avg,compared,excluded\n";
      for (const AnalysisRow& r : report.rows) {
        out << r.k << ',' << FormatDouble(r.e_avg.value) << ',' << r.e_avg.compared << ','
            << r.e_avg.excluded << '\n';
      }
    }
    {
      std::ofstream out = OpenOutput(dir / "e_var.csv");
      out << "model,k,variance,mae,mean_error\n";
      auto line = [&](ModelId id, std::size_t k, const ErrorSpread& s) {
        out << ModelName(id) << ',' << k << ',' << FormatDouble(s.variance) << ','
            << FormatDouble(s.mae) << ',' << FormatDouble(s.mean_error) << '\n';
      };
      for (const auto& [id, s] : report.raw_e_var) line(id, kNotAnonymized, s);
      for (const AnalysisRow& r : report.rows) {
        for (const auto& [id, s] : r.e_var) line(id, r.k, s);
      }
    }
    {
      std::ofstream out = OpenOutput(dir / "histograms.csv");
      out << "k,bin_lo,bin_hi,count\n";
      auto dump = [&](std::size_t k, const SimilarityHistogram& h) {
        for (std::size_t b = 0; b < h.counts.size(); ++b) {
          out << k << ',' << FormatDouble(h.bin_edges[b]) << ','
              << FormatDouble(h.bin_edges[b + 1]) << ',' << h.counts[b] << '\n';
        }
      };
      dump(kNotAnonymized, report.raw_histogram);
      for (const AnalysisRow& r : report.rows) dump(r.k, r.histogram);
    }
    {
      std::ofstream out = OpenOutput(dir / "similarity_signs.csv");
      out << "k,negative,zero,positive\n";
      auto line = [&](std::size_t k, const SignCounts& s) {
        out << k << ',' << s.negative << ',' << s.zero << ',' << s.positive << '\n';
      };
      line(kNotAnonymized, report.raw_signs);
      for (const AnalysisRow& r : report.rows) line(r.k, r.signs);
    }
    data_.Describe(manifest_);
    DescribeConfig(c);
    for (std::size_t t = 0; t < c.num_trials(); ++t) manifest_.seeds.push_back(TrialSeed(seed_, t));
    Finish(dir / "analysis");
    out_ << "analysis written to " << dir.string() << "\n";
  }

  void AddAudit(CLI::App& app) {
    auto* sub = app.add_subcommand("audit", "Check the k-anonymity of an anonymized file");
    sub->add_option("--anon", anon_path_, "anonrec-v1 file")->required();
    sub->add_option("--revealed", revealed_, "Comma-separated 1-based users whose ratings were revealed");
    sub->callback([this] {
      action_ = [this] {
        const AnonymizedFile file = LoadAnonymized(anon_path_);
        const AnonymityAudit audit = AuditKAnonymity(file.table);
        out_ << "satisfied_k=" << audit.satisfied_k << "\n";
        out_ << "classes=" << file.table.num_prototypes() << " users=" << file.table.num_members()
             << " declared_k=" << file.table.k << "\n";
        out_ << "class_sizes=";
        bool first = true;
        for (const auto& [size, count] : audit.class_sizes) {
          out_ << (first ? "" : ",") << size << ":" << count;
          first = false;
        }
        out_ << "\n";
        if (!revealed_.empty()) {
          if (!file.sigma) {
            throw Error(ErrorCode::kMissingAssignmentMap,
                        "--revealed needs a file written with --emit-sigma");
          }
          std::vector<UserIndex> users;
          for (const std::string& tok : Split(revealed_, ',')) {
            const std::int64_t u = ToInt(tok, "user");
            if (u < 1) throw Error(ErrorCode::kUnknownUser, tok);
            users.push_back(static_cast<UserIndex>(u - 1));
          }
          const ResidualAnonymity r = ComputeResidualAnonymity(file.table, *file.sigma, users);
          out_ << "residual_min=" << r.min_residual << "\n";
          for (std::size_t a = 0; a < r.residual.size(); ++a) {
            if (r.residual[a] != file.table.multiplicities[a]) {
              out_ << "residual a:" << a + 1 << " " << file.table.multiplicities[a] << "->"
                   << r.residual[a] << "\n";
            }
          }
        }
      };
    });
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<void()> action_;
  RunManifest manifest_;

  DatasetArgs data_;
  std::uint64_t seed_ = 1;
  std::int64_t k_ = 0;
  std::string output_;
  std::string anon_path_;
  bool emit_sigma_ = false;
  bool unweighted_ = false;
  std::string model_;
  std::optional<std::int64_t> user_;
  std::optional<std::int64_t> anon_id_;
  std::string ratings_;
  std::int64_t item_ = 0;
  std::int64_t k_min_ = 2;
  std::int64_t k_max_ = 15;
  std::int64_t trials_ = 20;
  std::int64_t folds_ = 0;
  double holdout_ = 0.2;
  double input_fraction_ = 0.2;
  std::string k_list_ = "2,4,10";
  std::string k_list_analyze_ = "2,3,4,5,6,7,8,9,10,11,12,13,14,15";
  std::int64_t n_min_ = 1;
  std::int64_t n_max_ = 20;
  std::int64_t draws_ = 20;
  std::int64_t trials2_ = 1;
  std::int64_t bins_ = static_cast<std::int64_t>(kDefaultHistogramBins);
  std::string revealed_;
};

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Cli cli(out, err);
    return cli.Run(args);
  } catch (const Error& e) {
    err << "anonrec: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace anonrec::cli
