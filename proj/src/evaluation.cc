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

#include "anonrec/evaluation.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <numeric>
#include <string>
#include <tuple>

#include "anonrec/anonymizer.h"
#include "anonrec/error.h"
#include "anonrec/random.h"
#include "anonrec/split.h"

namespace anonrec {

double Rmse(std::span<const PredictionPair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyTestSet, "no pairs for RMSE");
  double sum = 0.0;
  for (const PredictionPair& p : pairs) {
    const double e = p.predicted - p.actual;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(pairs.size()));
}

ErrorSpread ComputeEVar(std::span<const PredictionPair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyTestSet, "no pairs for e_var");
  const double count = static_cast<double>(pairs.size());
  ErrorSpread s;
  for (const PredictionPair& p : pairs) {
    s.mean_error += p.predicted - p.actual;
    s.mae += std::abs(p.predicted - p.actual);
  }
  s.mean_error /= count;
  s.mae /= count;
  for (const PredictionPair& p : pairs) {
    const double d = p.predicted - p.actual - s.mean_error;
    s.variance += d * d;
  }
  s.variance /= count;
  return s;
}

EAvg ComputeEAvg(std::span<const std::optional<double>> raw_means,
                 std::span<const std::optional<double>> anon_means) {
  if (raw_means.size() != anon_means.size()) {
    throw Error(ErrorCode::kInvalidArgument, "item sets differ");
  }
  EAvg out;
  double sum = 0.0;
  for (std::size_t i = 0; i < raw_means.size(); ++i) {
    if (raw_means[i] && anon_means[i]) {
      sum += std::abs(*raw_means[i] - *anon_means[i]);
      ++out.compared;
    } else {
      ++out.excluded;
    }
  }
  if (out.compared == 0) {
    throw Error(ErrorCode::kNoComparableItems, "no item has both means");
  }
  out.value = sum / static_cast<double>(out.compared);
  return out;
}

ExperimentConfig ExperimentConfig::Case1Defaults(std::uint64_t seed) {
  ExperimentConfig c;
  c.protocol = Protocol::kCase1;
  for (std::size_t k = 2; k <= 15; ++k) c.k_values.push_back(k);
  c.seed = seed;
  return c;
}

ExperimentConfig ExperimentConfig::Case2Defaults(std::uint64_t seed) {
  ExperimentConfig c;
  c.protocol = Protocol::kCase2;
  c.k_values = {2, 4, 10};
  for (std::size_t n = 1; n <= 20; ++n) c.n_values.push_back(n);
  c.trials = 1;
  c.seed = seed;
  return c;
}

std::size_t ExperimentConfig::num_trials() const {
  return protocol == Protocol::kCase1 && cv_folds >= 2 ? cv_folds : trials;
}

std::uint64_t TrialSeed(std::uint64_t master, std::size_t trial) {
  return DeriveSeed(master, {trial});
}

const ResultRow* ExperimentResult::Find(ModelId model, std::size_t k,
                                        std::size_t n) const {
  for (const ResultRow& r : rows) {
    if (r.model == model && r.k == k && r.n == n) return &r;
  }
  return nullptr;
}

double ExperimentResult::RmseOf(ModelId model, std::size_t k, std::size_t n) const {
  const ResultRow* r = Find(model, k, n);
  if (!r) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(ModelName(model)) + " k=" + std::to_string(k) +
                    " n=" + std::to_string(n) + " not in result");
  }
  return r->rmse;
}

namespace {

void ValidateConfig(const ExperimentConfig& c, Protocol expected) {
  if (c.protocol != expected) {
    throw Error(ErrorCode::kInvalidArgument, "experiment protocol mismatch");
  }
  if (c.num_trials() < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  for (std::size_t k : c.k_values) {
    if (k < 1) throw Error(ErrorCode::kInvalidK, "k values must be >= 1");
  }
  for (std::size_t n : c.n_values) {
    if (n < 1) throw Error(ErrorCode::kInvalidArgument, "N values must be >= 1");
  }
  if (expected == Protocol::kCase2 && c.input_draws < 1) {
    throw Error(ErrorCode::kInvalidArgument, "input draws must be >= 1");
  }
}

bool Wanted(const ExperimentConfig& c, ModelId id) {
  return c.models.empty() ||
         std::find(c.models.begin(), c.models.end(), id) != c.models.end();
}

// Runs body(i) for i in [0, count) on the OpenMP team and rethrows the first
// exception on the calling thread.
template <typename Body>
void ParallelFor(std::size_t count, Body&& body) {
  std::exception_ptr failure;
  const auto num = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < num; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(anonrec_parallel_for)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <typename InputOf>
std::vector<PredictedRating> PredictTestSet(const ItemSimilarityMatrix& sims,
                                            std::span<const RatingTriple> test,
                                            RatingScale scale, InputOf input_of) {
  std::vector<PredictedRating> out(test.size());
  ParallelFor(test.size(), [&](std::size_t p) {
    out[p] = PredictWithRatings(sims, input_of(test[p].user), test[p].item, scale);
  });
  return out;
}

std::vector<PredictionPair> Pair(std::span<const PredictedRating> predicted,
                                 std::span<const RatingTriple> test) {
  std::vector<PredictionPair> pairs(test.size());
  for (std::size_t p = 0; p < test.size(); ++p) {
    pairs[p] = {predicted[p].value, test[p].value};
  }
  return pairs;
}

std::size_t CountFallbacks(std::span<const PredictedRating> predicted) {
  return static_cast<std::size_t>(std::count_if(
      predicted.begin(), predicted.end(),
      [](const PredictedRating& p) { return p.fallback != FallbackLevel::kFull; }));
}

using CellKey = std::tuple<ModelId, std::size_t, std::size_t>;

struct Cell {
  std::vector<double> rmse_samples;
  std::size_t fallbacks = 0;
  std::size_t predictions = 0;
  std::size_t skipped = 0;
};

ExperimentResult Assemble(const std::map<CellKey, Cell>& cells,
                          const ExperimentConfig& config) {
  ExperimentResult result;
  for (std::size_t t = 0; t < config.num_trials(); ++t) {
    result.trial_seeds.push_back(TrialSeed(config.seed, t));
  }
  for (const auto& [key, cell] : cells) {
    const auto& [model, k, n] = key;
    if (!Wanted(config, model) || cell.rmse_samples.empty()) continue;
    const auto& xs = cell.rmse_samples;
    const double count = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / count;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    ResultRow row;
    row.model = model;
    row.k = k;
    row.n = n;
    row.rmse = mean;
    row.rmse_sd = xs.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    row.fallback_rate = cell.predictions > 0
                            ? static_cast<double>(cell.fallbacks) /
                                  static_cast<double>(cell.predictions)
                            : 0.0;
    row.skipped_users = cell.skipped;
    result.rows.push_back(row);
  }
  return result;
}

std::vector<UserIndex> IdentityRows(std::size_t n) {
  std::vector<UserIndex> rows(n);
  std::iota(rows.begin(), rows.end(), UserIndex{0});
  return rows;
}

// ---------------------------------------------------------------------------
// Case 1

struct Case1KOutcome {
  EAvg e_avg;
  SimilarityHistogram histogram;
  SignCounts signs;
};

struct Case1Outcome {
  std::vector<RatingTriple> test;
  std::map<std::pair<ModelId, std::size_t>, std::vector<PredictedRating>> predictions;
  SimilarityHistogram raw_histogram;
  SignCounts raw_signs;
  std::map<std::size_t, Case1KOutcome> per_k;
};

Case1Outcome RunCase1Trial(const SparseRatingMatrix& matrix,
                           const ExperimentConfig& config, std::size_t trial,
                           ExperimentProbe* probe, bool diagnostics) {
  const std::uint64_t seed = TrialSeed(config.seed, trial);
  RatingHoldout split;
  if (config.cv_folds >= 2) {
    // All folds come from one permutation keyed on the master seed.
    split = std::move(SplitRatingFolds(matrix, config.cv_folds,
                                       DeriveSeed(config.seed, {0xf01d}))[trial]);
  } else {
    split = SplitRatingHoldout(
        matrix, {SplitKind::kRatingHoldout, config.holdout_fraction, DeriveSeed(seed, {1})});
  }
  const SparseRatingMatrix& train = split.train;
  const std::size_t n = train.num_users();
  const std::vector<UserIndex> identity = IdentityRows(n);
  if (probe) {
    probe->OnTestRatings(trial, split.test);
    probe->OnTrainingInput(trial, train, identity);
  }

  Case1Outcome out;
  out.test = std::move(split.test);
  const RatingScale scale = train.scale();

  const ItemSimilarityMatrix raw = ComputeItemSimilarity(train);
  out.predictions[{ModelId::kCase1Reg, kNotAnonymized}] = PredictTestSet(
      raw, out.test, scale, [&](UserIndex u) { return train.row(u); });
  out.predictions[{ModelId::kBaseline, kNotAnonymized}] =
      PredictTestSet(raw, out.test, scale, [](UserIndex) { return RatingRowView{}; });
  if (diagnostics) {
    out.raw_histogram = ComputeSimilarityHistogram(raw, config.histogram_bins);
    out.raw_signs = CountSimilaritySigns(raw);
  }

  // Each user reveals a fixed random share of their own training ratings.
  std::vector<RatingRow> targets(n);
  for (const RatingTriple& t : out.test) targets[t.user].push_back({t.item, t.value});
  std::vector<RatingRow> revealed(n);
  for (std::size_t u = 0; u < n; ++u) {
    const RatingRowView row = train.row(static_cast<UserIndex>(u));
    if (row.empty()) continue;
    revealed[u] = SplitPredictionInputFraction(row, config.prediction_input_fraction,
                                               DeriveSeed(seed, {2, u}))
                      .input;
    if (probe && !targets[u].empty()) {
      probe->OnPredictionInput(trial, static_cast<UserIndex>(u), revealed[u], targets[u]);
    }
  }

  for (std::size_t k : config.k_values) {
    if (probe) probe->OnAnonymizerInput(trial, k, train, identity);
    const Anonymization anon = OkaAnonymize(train, k, DeriveSeed(seed, {3, k}));
    const ItemSimilarityMatrix sims = ComputeItemSimilarity(anon.table, config.weighting);
    out.predictions[{ModelId::kCase1aAi, k}] =
        PredictTestSet(sims, out.test, scale, [&](UserIndex u) {
          return anon.table.prototypes.row(anon.sigma(u));
        });
    out.predictions[{ModelId::kCase1aUr, k}] = PredictTestSet(
        sims, out.test, scale, [&](UserIndex u) { return RatingRowView(revealed[u]); });
    out.predictions[{ModelId::kBaseline, k}] =
        PredictTestSet(sims, out.test, scale, [](UserIndex) { return RatingRowView{}; });
    if (diagnostics) {
      Case1KOutcome& d = out.per_k[k];
      d.e_avg = ComputeEAvg(raw.item_means(), sims.item_means());
      d.histogram = ComputeSimilarityHistogram(sims, config.histogram_bins);
      d.signs = CountSimilaritySigns(sims);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Case 2

struct Case2Variant {
  ModelId model;
  std::size_t k;
  const ItemSimilarityMatrix* sims;
  bool uses_input;
};

}  // namespace

ExperimentResult RunCase1Experiment(const SparseRatingMatrix& matrix,
                                    const ExperimentConfig& config,
                                    ExperimentProbe* probe) {
  ValidateConfig(config, Protocol::kCase1);
  std::map<CellKey, Cell> cells;
  for (std::size_t trial = 0; trial < config.num_trials(); ++trial) {
    const Case1Outcome outcome = RunCase1Trial(matrix, config, trial, probe, false);
    if (outcome.test.empty()) throw Error(ErrorCode::kEmptyTestSet, "Case 1 test set");
    for (const auto& [key, predicted] : outcome.predictions) {
      Cell& cell = cells[{key.first, key.second, 0}];
      cell.rmse_samples.push_back(Rmse(Pair(predicted, outcome.test)));
      cell.fallbacks += CountFallbacks(predicted);
      cell.predictions += predicted.size();
    }
  }
  return Assemble(cells, config);
}

ExperimentResult RunCase2Experiment(const SparseRatingMatrix& matrix,
                                    const ExperimentConfig& config,
                                    ExperimentProbe* probe) {
  ValidateConfig(config, Protocol::kCase2);
  std::map<CellKey, Cell> cells;
  const RatingScale scale = matrix.scale();

  for (std::size_t trial = 0; trial < config.num_trials(); ++trial) {
    const std::uint64_t seed = TrialSeed(config.seed, trial);
    const UserHoldout split = SplitUserHoldout(
        matrix, {SplitKind::kUserHoldout, config.holdout_fraction, DeriveSeed(seed, {1})});
    if (probe) {
      std::vector<RatingTriple> test;
      for (const HeldOutUser& h : split.test_users) {
        for (const RatingEntry& e : h.row) test.push_back({h.user, e.item, e.value});
      }
      probe->OnTestRatings(trial, test);
      probe->OnTrainingInput(trial, split.train, split.train_users);
    }

    const ItemSimilarityMatrix raw = ComputeItemSimilarity(split.train);
    std::vector<std::unique_ptr<ItemSimilarityMatrix>> anon_sims;
    std::vector<Case2Variant> variants = {
        {ModelId::kCase2Ur, kNotAnonymized, &raw, true},
        {ModelId::kBaseline, kNotAnonymized, &raw, false}};
    for (std::size_t k : config.k_values) {
      if (probe) probe->OnAnonymizerInput(trial, k, split.train, split.train_users);
      const Anonymization anon = OkaAnonymize(split.train, k, DeriveSeed(seed, {3, k}));
      anon_sims.push_back(std::make_unique<ItemSimilarityMatrix>(
          ComputeItemSimilarity(anon.table, config.weighting)));
      variants.push_back({ModelId::kCase2aUr, k, anon_sims.back().get(), true});
      variants.push_back({ModelId::kBaseline, k, anon_sims.back().get(), false});
    }

    const std::size_t num_users = split.test_users.size();
    const std::size_t num_variants = variants.size();
    for (std::size_t n_input : config.n_values) {
      std::size_t skipped = 0;
      for (const HeldOutUser& h : split.test_users) skipped += h.row.size() <= n_input;
      for (const Case2Variant& v : variants) cells[{v.model, v.k, n_input}].skipped += skipped;

      for (std::size_t draw = 0; draw < config.input_draws; ++draw) {
        std::vector<std::optional<InputSplit>> inputs(num_users);
        for (std::size_t p = 0; p < num_users; ++p) {
          const HeldOutUser& h = split.test_users[p];
          if (h.row.size() <= n_input) continue;
          inputs[p] = SplitPredictionInput(h.row, n_input,
                                           DeriveSeed(seed, {2, n_input, draw, h.user}));
          if (probe) {
            probe->OnPredictionInput(trial, h.user, inputs[p]->input, inputs[p]->holdout);
          }
        }

        // Per (user, variant) partial sums, reduced below in user order.
        std::vector<double> squared(num_users * num_variants, 0.0);
        std::vector<std::size_t> fallbacks(num_users * num_variants, 0);
        ParallelFor(num_users, [&](std::size_t p) {
          if (!inputs[p]) return;
          for (std::size_t v = 0; v < num_variants; ++v) {
            const Case2Variant& var = variants[v];
            const RatingRowView given =
                var.uses_input ? RatingRowView(inputs[p]->input) : RatingRowView{};
            for (const RatingEntry& target : inputs[p]->holdout) {
              const PredictedRating r =
                  PredictWithRatings(*var.sims, given, target.item, scale);
              const double e = r.value - target.value;
              squared[p * num_variants + v] += e * e;
              fallbacks[p * num_variants + v] += r.fallback != FallbackLevel::kFull;
            }
          }
        });

        std::size_t scored = 0;
        for (std::size_t p = 0; p < num_users; ++p) {
          if (inputs[p]) scored += inputs[p]->holdout.size();
        }
        if (scored == 0) continue;
        for (std::size_t v = 0; v < num_variants; ++v) {
          double sum = 0.0;
          std::size_t fb = 0;
          for (std::size_t p = 0; p < num_users; ++p) {
            sum += squared[p * num_variants + v];
            fb += fallbacks[p * num_variants + v];
          }
          Cell& cell = cells[{variants[v].model, variants[v].k, n_input}];
          cell.rmse_samples.push_back(std::sqrt(sum / static_cast<double>(scored)));
          cell.fallbacks += fb;
          cell.predictions += scored;
        }
      }
    }
  }
  return Assemble(cells, config);
}

AnalysisReport RunAnalysis(const SparseRatingMatrix& matrix,
                           const ExperimentConfig& config, ExperimentProbe* probe) {
  ValidateConfig(config, Protocol::kCase1);
  AnalysisReport report;
  report.rows.resize(config.k_values.size());
  const double trials = static_cast<double>(config.num_trials());

  auto add = [&](ErrorSpread& into, const ErrorSpread& s) {
    into.variance += s.variance / trials;
    into.mae += s.mae / trials;
    into.mean_error += s.mean_error / trials;
  };

  for (std::size_t trial = 0; trial < config.num_trials(); ++trial) {
    const Case1Outcome outcome = RunCase1Trial(matrix, config, trial, probe, true);
    if (outcome.test.empty()) throw Error(ErrorCode::kEmptyTestSet, "Case 1 test set");
    auto spread = [&](ModelId id, std::size_t k) {
      return ComputeEVar(Pair(outcome.predictions.at({id, k}), outcome.test));
    };
    if (trial == 0) {
      report.raw_histogram = outcome.raw_histogram;
      report.raw_signs = outcome.raw_signs;
    }
    add(report.raw_e_var[ModelId::kCase1Reg], spread(ModelId::kCase1Reg, kNotAnonymized));
    add(report.raw_e_var[ModelId::kBaseline], spread(ModelId::kBaseline, kNotAnonymized));
    for (std::size_t r = 0; r < config.k_values.size(); ++r) {
      const std::size_t k = config.k_values[r];
      AnalysisRow& row = report.rows[r];
      const Case1KOutcome& d = outcome.per_k.at(k);
      row.k = k;
      if (trial == 0) {
        row.e_avg = d.e_avg;
        row.e_avg.value = 0.0;
        row.histogram = d.histogram;
        row.signs = d.signs;
      }
      row.e_avg.value += d.e_avg.value / trials;
      for (ModelId id : {ModelId::kCase1aAi, ModelId::kCase1aUr, ModelId::kBaseline}) {
        add(row.e_var[id], spread(id, k));
      }
    }
  }
  return report;
}

}  // namespace anonrec
