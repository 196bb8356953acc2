// Copyright 2026 The reviewkit Authors
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

#ifndef REVIEWKIT_EVALUATION_HPP_
#define REVIEWKIT_EVALUATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reviewkit/corpus.hpp"
#include "reviewkit/inference_client.hpp"
#include "reviewkit/template_engine.hpp"

namespace reviewkit {

// A recommendation mapped onto [1, 10] (1 = strong reject, 10 = strong accept).
class NormalizedScore {
 public:
  // Throws Error(kInvalidArgument) outside [1, 10].
  explicit NormalizedScore(double value);
  double value() const { return value_; }
  auto operator<=>(const NormalizedScore&) const = default;

 private:
  double value_;
};

// 1 + 9 * (raw - min) / (max - min). `raw` may lie between scale points.
NormalizedScore NormalizeScore(double raw, int scale_min, int scale_max);
NormalizedScore NormalizeScore(double raw, const ReviewField& scale_field);

inline constexpr double kExactMatchEpsilon = 1e-9;

bool ExactMatch(NormalizedScore generated, std::span<const NormalizedScore> humans,
                double eps = kExactMatchEpsilon);
// |generated - mean(humans)|
double AvgError(NormalizedScore generated, std::span<const NormalizedScore> humans);

struct PaperEvalRow {
  std::string paper_id;
  std::optional<NormalizedScore> generated_norm;
  std::vector<NormalizedScore> human_norms;
  std::optional<bool> em;
  std::optional<double> abs_error;
};

// Fills em / abs_error when both sides are present.
PaperEvalRow MakeEvalRow(std::string paper_id, std::optional<NormalizedScore> generated,
                         std::vector<NormalizedScore> humans);

struct MeanStd {
  std::optional<double> mean;
  std::optional<double> std;  // sample (n - 1) standard deviation
};

MeanStd ComputeMeanStd(std::span<const double> values);

struct EvalReport {
  std::string model_id;
  std::size_t n_papers = 0;
  std::size_t n_excluded = 0;
  std::optional<double> em_percent;
  MeanStd avg_error;
  MeanStd avg_recommendation;
};

// Rows without a generated recommendation or without human scores are
// counted in n_excluded and left out of every statistic.
EvalReport Aggregate(std::string model_id, std::span<const PaperEvalRow> rows);

// One row per paper that has a review generated by `model_id` (papers sorted
// by id). Throws Error(kNothingToEvaluate) when there is none.
std::vector<PaperEvalRow> BuildEvalRows(const Corpus& corpus, const std::string& model_id);

// Mean/std of every human recommendation (normalized) of the given papers.
MeanStd HumanRecommendationStats(const Corpus& corpus, std::span<const PaperEvalRow> rows);

// ---- Arena --------------------------------------------------------------------

enum class ArenaOutcome { kA, kB, kTie };
std::string_view ArenaOutcomeName(ArenaOutcome outcome);

struct ArenaVerdict {
  std::string paper_id;
  std::string model_a;  // model whose review was shown as "Review A"
  std::string model_b;
  ArenaOutcome outcome = ArenaOutcome::kTie;
  std::string rationale;
  bool order_swapped = false;
};

// Last standalone "Review A" / "Review B" / "Tie" (case-insensitive) after the
// last occurrence of "decision"; the whole text is scanned when there is no
// such word or no literal follows it. Throws Error(kUnparseableVerdict).
ArenaOutcome ParseVerdict(std::string_view judge_text);

ArenaVerdict RunArenaPair(const std::string& paper_id, const ReviewTemplate& tmpl,
                          std::span<const HumanReview> experts, const std::string& model_a,
                          std::string_view review_a, const std::string& model_b,
                          std::string_view review_b, const InferenceClient& judge);

struct ArenaOptions {
  // Also judge every pair with A and B exchanged (order_swapped = true).
  bool both_orders = false;
  std::size_t max_parallel = 4;
};

struct ArenaRun {
  std::vector<ArenaVerdict> verdicts;  // sorted by (paper_id, order_swapped)
  std::size_t skipped_papers = 0;      // missing a review or expert reviews
  std::vector<std::string> failures;   // "paper_id: message"
};

ArenaRun RunArena(const Corpus& corpus, const std::string& model_a, const std::string& model_b,
                  const InferenceClient& judge, const ArenaOptions& options = {});

struct WinRecord {
  std::string model;
  std::string opponent;
  std::size_t wins = 0;
  std::size_t ties = 0;
  std::size_t losses = 0;
  // (wins + 0.5 * ties) / (wins + ties + losses)
  double win_share = 0.0;
};

// One record per (model, opponent) ordered pair appearing in the verdicts,
// sorted by model then opponent.
std::vector<WinRecord> WinRates(std::span<const ArenaVerdict> verdicts);

// ---- Reports ------------------------------------------------------------------

struct HumanBaseline {
  MeanStd avg_recommendation;
};

// Markdown: recommendation-match table, average-recommendation table and one
// arena table per model pair.
std::string RenderReport(std::span<const EvalReport> reports,
                         std::span<const WinRecord> arena_records,
                         const std::optional<HumanBaseline>& humans = std::nullopt);

// "0.96±0.85"; "n/a" parts for undefined statistics.
std::string FormatMeanStd(const MeanStd& stats, int decimals);

std::string EvalRowToJsonLine(const PaperEvalRow& row, const std::string& model_id);
std::string ArenaVerdictToJsonLine(const ArenaVerdict& verdict);

}  // namespace reviewkit

#endif  // REVIEWKIT_EVALUATION_HPP_
