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

#include "reviewkit/evaluation.hpp"

#include <cmath>

#include "reviewkit/error.hpp"

namespace reviewkit {

NormalizedScore::NormalizedScore(double value) : value_(value) {
  if (!(value >= 1.0 && value <= 10.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "normalized score " + std::to_string(value) + " outside [1, 10]");
  }
}

NormalizedScore NormalizeScore(double raw, int scale_min, int scale_max) {
  if (scale_max <= scale_min) throw Error(ErrorCode::kInvalidArgument, "degenerate scale");
  if (!(raw >= scale_min && raw <= scale_max)) {
    throw Error(ErrorCode::kInvalidArgument,
                "score " + std::to_string(raw) + " outside scale [" + std::to_string(scale_min) +
                    ", " + std::to_string(scale_max) + "]");
  }
  const double span = static_cast<double>(scale_max) - static_cast<double>(scale_min);
  return NormalizedScore(1.0 + 9.0 * ((raw - scale_min) / span));
}

NormalizedScore NormalizeScore(double raw, const ReviewField& scale_field) {
  if (scale_field.scale.size() < 2) throw Error(ErrorCode::kInvalidArgument, "degenerate scale");
  return NormalizeScore(raw, scale_field.scale_min(), scale_field.scale_max());
}

bool ExactMatch(NormalizedScore generated, std::span<const NormalizedScore> humans, double eps) {
  if (humans.empty()) throw Error(ErrorCode::kInvalidArgument, "no human scores");
  for (const NormalizedScore& h : humans) {
    if (std::abs(generated.value() - h.value()) <= eps) return true;
  }
  return false;
}

double AvgError(NormalizedScore generated, std::span<const NormalizedScore> humans) {
  if (humans.empty()) throw Error(ErrorCode::kInvalidArgument, "no human scores");
  double sum = 0.0;
  for (const NormalizedScore& h : humans) sum += h.value();
  return std::abs(generated.value() - sum / static_cast<double>(humans.size()));
}

PaperEvalRow MakeEvalRow(std::string paper_id, std::optional<NormalizedScore> generated,
                         std::vector<NormalizedScore> humans) {
  PaperEvalRow row;
  row.paper_id = std::move(paper_id);
  row.generated_norm = generated;
  row.human_norms = std::move(humans);
  if (row.generated_norm && !row.human_norms.empty()) {
    row.em = ExactMatch(*row.generated_norm, row.human_norms);
    row.abs_error = AvgError(*row.generated_norm, row.human_norms);
  }
  return row;
}

MeanStd ComputeMeanStd(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  out.mean = mean;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

EvalReport Aggregate(std::string model_id, std::span<const PaperEvalRow> rows) {
  EvalReport report;
  report.model_id = std::move(model_id);
  report.n_papers = rows.size();
  std::vector<double> errors;
  std::vector<double> recommendations;
  std::size_t matches = 0;
  for (const PaperEvalRow& row : rows) {
    if (!row.em || !row.abs_error || !row.generated_norm) {
      ++report.n_excluded;
      continue;
    }
    if (*row.em) ++matches;
    errors.push_back(*row.abs_error);
    recommendations.push_back(row.generated_norm->value());
  }
  if (!errors.empty()) {
    report.em_percent = 100.0 * static_cast<double>(matches) / static_cast<double>(errors.size());
  }
  report.avg_error = ComputeMeanStd(errors);
  report.avg_recommendation = ComputeMeanStd(recommendations);
  return report;
}

std::vector<PaperEvalRow> BuildEvalRows(const Corpus& corpus, const std::string& model_id) {
  std::vector<PaperEvalRow> rows;
  for (const auto& [paper_id, paper] : corpus.papers()) {
    const GeneratedReview* generated = corpus.GeneratedBy(paper_id, model_id);
    if (generated == nullptr) continue;
    const ReviewField& rec = corpus.templates().at(paper.venue_id).recommendation();
    std::optional<NormalizedScore> gen;
    if (generated->recommendation_raw) gen = NormalizeScore(*generated->recommendation_raw, rec);
    std::vector<NormalizedScore> humans;
    for (const HumanReview& r : corpus.ReviewsOf(paper_id)) {
      humans.push_back(NormalizeScore(r.recommendation_raw, rec));
    }
    rows.push_back(MakeEvalRow(paper_id, gen, std::move(humans)));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kNothingToEvaluate,
                "nothing to evaluate: no reviews generated by '" + model_id + "'");
  }
  return rows;
}

MeanStd HumanRecommendationStats(const Corpus& corpus, std::span<const PaperEvalRow> rows) {
  std::vector<double> values;
  for (const PaperEvalRow& row : rows) {
    const ReviewField& rec = corpus.TemplateFor(row.paper_id).recommendation();
    for (const HumanReview& r : corpus.ReviewsOf(row.paper_id)) {
      values.push_back(NormalizeScore(r.recommendation_raw, rec).value());
    }
  }
  return ComputeMeanStd(values);
}

}  // namespace reviewkit
