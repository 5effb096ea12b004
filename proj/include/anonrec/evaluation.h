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

#ifndef ANONREC_EVALUATION_H_
#define ANONREC_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "anonrec/predictor.h"
#include "anonrec/ratings.h"
#include "anonrec/similarity.h"

namespace anonrec {

struct PredictionPair {
  double predicted = 0.0;
  double actual = 0.0;
};

// Throws EmptyTestSet.
double Rmse(std::span<const PredictionPair> pairs);

struct ErrorSpread {
  double variance = 0.0;  // population variance of (predicted - actual)
  double mae = 0.0;
  double mean_error = 0.0;
};

// Throws EmptyTestSet.
ErrorSpread ComputeEVar(std::span<const PredictionPair> pairs);

struct EAvg {
  double value = 0.0;
  std::size_t compared = 0;
  std::size_t excluded = 0;  // items with a mean on at most one side
};

// Mean |raw_i - anon_i| over items defined on both sides. Throws
// NoComparableItems.
EAvg ComputeEAvg(std::span<const std::optional<double>> raw_means,
                 std::span<const std::optional<double>> anon_means);

enum class Protocol { kCase1, kCase2 };

// Rows for non-anonymized training inputs (Case1/REG, Case2/UR and the raw
// BASELINE) carry k = 0. Case 1 rows carry n = 0.
inline constexpr std::size_t kNotAnonymized = 0;

struct ExperimentConfig {
  Protocol protocol = Protocol::kCase1;
  std::vector<ModelId> models;  // empty: every model of the protocol
  std::vector<std::size_t> k_values;
  std::vector<std::size_t> n_values;  // Case 2 prediction-input sizes
  std::size_t trials = 20;
  std::size_t input_draws = 20;  // Case 2 draws per (user, N)
  double holdout_fraction = 0.2;
  double prediction_input_fraction = 0.2;  // Case1A/UR, per user
  // Case 1 only: >= 2 replaces the random holdouts by cv_folds-fold cross
  // validation (one trial per fold).
  std::size_t cv_folds = 0;
  std::uint64_t seed = 0;
  RowWeighting weighting = RowWeighting::kMultiplicity;
  std::size_t histogram_bins = kDefaultHistogramBins;

  static ExperimentConfig Case1Defaults(std::uint64_t seed);  // k = 2..15
  static ExperimentConfig Case2Defaults(std::uint64_t seed);  // k = 2,4,10; N = 1..20

  std::size_t num_trials() const;
};

// Seed of trial t: DeriveSeed(master, {t}).
std::uint64_t TrialSeed(std::uint64_t master, std::size_t trial);

struct ResultRow {
  ModelId model = ModelId::kBaseline;
  std::size_t k = 0;
  std::size_t n = 0;
  double rmse = 0.0;     // averaged over trials (Case 2: over trials x draws)
  double rmse_sd = 0.0;  // sample standard deviation of the same values
  double fallback_rate = 0.0;
  std::size_t skipped_users = 0;  // Case 2: users with <= N ratings, all trials
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // sorted by (model, k, n)
  std::vector<std::uint64_t> trial_seeds;

  const ResultRow* Find(ModelId model, std::size_t k, std::size_t n = 0) const;
  // Throws InvalidArgument when absent.
  double RmseOf(ModelId model, std::size_t k, std::size_t n = 0) const;
};

// Observes the data flow of an experiment. Indices are those of the input
// matrix; `user_of_row` maps a training row to its input-matrix user.
class ExperimentProbe {
 public:
  virtual ~ExperimentProbe() = default;
  virtual void OnTrainingInput(std::size_t /*trial*/, const SparseRatingMatrix& /*train*/,
                               std::span<const UserIndex> /*user_of_row*/) {}
  virtual void OnAnonymizerInput(std::size_t /*trial*/, std::size_t /*k*/,
                                 const SparseRatingMatrix& /*input*/,
                                 std::span<const UserIndex> /*user_of_row*/) {}
  virtual void OnTestRatings(std::size_t /*trial*/, std::span<const RatingTriple> /*test*/) {}
  // Revealed ratings and the items they are scored on.
  virtual void OnPredictionInput(std::size_t /*trial*/, UserIndex /*user*/,
                                 RatingRowView /*input*/, RatingRowView /*targets*/) {}
};

ExperimentResult RunCase1Experiment(const SparseRatingMatrix& matrix,
                                    const ExperimentConfig& config,
                                    ExperimentProbe* probe = nullptr);

ExperimentResult RunCase2Experiment(const SparseRatingMatrix& matrix,
                                    const ExperimentConfig& config,
                                    ExperimentProbe* probe = nullptr);

struct AnalysisRow {
  std::size_t k = 0;
  EAvg e_avg;  // trial-averaged value; counts from the first trial
  std::map<ModelId, ErrorSpread> e_var;  // Case1A/AI, Case1A/UR, BASELINE
  SimilarityHistogram histogram;         // first trial
  SignCounts signs;                      // first trial
};

struct AnalysisReport {
  SimilarityHistogram raw_histogram;
  SignCounts raw_signs;
  std::map<ModelId, ErrorSpread> raw_e_var;  // Case1/REG, BASELINE
  std::vector<AnalysisRow> rows;             // in config.k_values order
};

// Case 1 protocol: per k, the drift of the item means, the anonymized
// similarity histogram and the spread of the prediction errors.
AnalysisReport RunAnalysis(const SparseRatingMatrix& matrix,
                           const ExperimentConfig& config,
                           ExperimentProbe* probe = nullptr);

}  // namespace anonrec

#endif  // ANONREC_EVALUATION_H_
