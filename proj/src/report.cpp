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

#include <cstdio>
#include <map>
#include <json.hpp>

#include "reviewkit/evaluation.hpp"

namespace reviewkit {
namespace {

using ojson = nlohmann::ordered_json;

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

ojson OptionalNumber(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

}  // namespace

std::string FormatMeanStd(const MeanStd& stats, int decimals) {
  if (!stats.mean) return "n/a";
  return Fixed(*stats.mean, decimals) + "±" + (stats.std ? Fixed(*stats.std, decimals) : "n/a");
}

std::string RenderReport(std::span<const EvalReport> reports,
                         std::span<const WinRecord> arena_records,
                         const std::optional<HumanBaseline>& humans) {
  std::string out;
  out += "## Recommendation match\n\n";
  out += "| Model | EM (%) | Avg. Error (mean±std) |\n";
  out += "|---|---|---|\n";
  for (const EvalReport& r : reports) {
    out += "| " + r.model_id + " | " + (r.em_percent ? Fixed(*r.em_percent, 1) : "n/a") + " | " +
           FormatMeanStd(r.avg_error, 2) + " |\n";
  }

  out += "\n## Average recommendation\n\n";
  out += "| Model | Avg. Recommendation |\n";
  out += "|---|---|\n";
  for (const EvalReport& r : reports) {
    out += "| " + r.model_id + " | " + FormatMeanStd(r.avg_recommendation, 1) + " |\n";
  }
  if (humans) out += "| Human Reviewers | " + FormatMeanStd(humans->avg_recommendation, 1) + " |\n";

  std::map<std::string, std::vector<const WinRecord*>> by_opponent;
  for (const WinRecord& r : arena_records) by_opponent[r.opponent].push_back(&r);
  for (const auto& [opponent, records] : by_opponent) {
    out += "\n## Arena against " + opponent + "\n\n";
    out += "| Model | Wins | Ties | Losses | Win share (%) |\n";
    out += "|---|---|---|---|---|\n";
    for (const WinRecord* r : records) {
      out += "| " + r->model + " | " + std::to_string(r->wins) + " | " + std::to_string(r->ties) +
             " | " + std::to_string(r->losses) + " | " + Fixed(100.0 * r->win_share, 1) + " |\n";
    }
  }
  return out;
}

std::string EvalRowToJsonLine(const PaperEvalRow& row, const std::string& model_id) {
  ojson j;
  j["kind"] = "eval_row";
  j["model_id"] = model_id;
  j["paper_id"] = row.paper_id;
  j["generated_norm"] = row.generated_norm ? ojson(row.generated_norm->value()) : ojson(nullptr);
  ojson humans = ojson::array();
  for (const NormalizedScore& h : row.human_norms) humans.push_back(h.value());
  j["human_norms"] = std::move(humans);
  j["em"] = row.em ? ojson(*row.em) : ojson(nullptr);
  j["abs_error"] = OptionalNumber(row.abs_error);
  return j.dump();
}

std::string ArenaVerdictToJsonLine(const ArenaVerdict& verdict) {
  ojson j;
  j["kind"] = "arena_verdict";
  j["paper_id"] = verdict.paper_id;
  j["model_a"] = verdict.model_a;
  j["model_b"] = verdict.model_b;
  j["outcome"] = ArenaOutcomeName(verdict.outcome);
  j["rationale"] = verdict.rationale;
  j["order_swapped"] = verdict.order_swapped;
  return j.dump();
}

}  // namespace reviewkit
