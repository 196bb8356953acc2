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

#include "reviewkit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "reviewkit/error.hpp"
#include "reviewkit/prompting.hpp"

namespace reviewkit {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string UtcStamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

TemplateStore::TemplateStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  for (auto& t : BuiltinTemplates()) templates_[t.venue_id] = std::move(t);
  if (dir_.empty() || !std::filesystem::is_directory(dir_)) return;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tmpl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    try {
      ReviewTemplate t = ParseTemplate(ReadFile(file));
      templates_[t.venue_id] = std::move(t);
    } catch (const Error& e) {
      throw Error(e.code(), file.filename().string() + ": " + e.what());
    }
  }
}

std::optional<ReviewTemplate> TemplateStore::Get(const std::string& venue_id) const {
  std::lock_guard lock(mu_);
  auto it = templates_.find(venue_id);
  if (it == templates_.end()) return std::nullopt;
  return it->second;
}

std::vector<ReviewTemplate> TemplateStore::List() const {
  std::lock_guard lock(mu_);
  std::vector<ReviewTemplate> out;
  for (const auto& [_, t] : templates_) out.push_back(t);
  return out;
}

void TemplateStore::Put(const ReviewTemplate& tmpl) {
  ValidateTemplate(tmpl);
  std::lock_guard lock(mu_);
  if (!dir_.empty()) {
    std::filesystem::create_directories(dir_);
    const auto target = dir_ / (tmpl.venue_id + ".tmpl");
    const auto staging = dir_ / ("." + tmpl.venue_id + ".tmpl.tmp");
    WriteTextFile(staging, SerializeTemplate(tmpl));
    std::filesystem::rename(staging, target);
  }
  templates_[tmpl.venue_id] = tmpl;
}

std::filesystem::path CreateRunDir(const std::filesystem::path& results_dir, std::string_view kind) {
  std::filesystem::create_directories(results_dir);
  const std::string base = UtcStamp() + "-" + std::string(kind);
  for (int n = 0;; ++n) {
    auto candidate = results_dir / (n == 0 ? base : base + "-" + std::to_string(n));
    if (std::filesystem::create_directory(candidate)) return candidate;
  }
}

void WriteTextFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

GenerationOutcome GenerateReview(const InferenceClient& client, const ReviewTemplate& tmpl,
                                 std::string_view paper_text, std::size_t context_tokens,
                                 const StreamConsumer& on_event, std::string paper_id) {
  const PromptBundle bundle = BuildReviewerMessages(tmpl, paper_text);
  const auto budget = CheckContextBudget(bundle, context_tokens,
                                         static_cast<std::size_t>(client.config().max_output_tokens));
  if (!budget.fits) {
    throw Error(ErrorCode::kContextTooLong,
                "prompt needs about " + std::to_string(budget.approx_token_count) +
                    " tokens, over the " + std::to_string(context_tokens) + "-token context",
                413);
  }
  GenerationOutcome outcome;
  std::string text;
  if (on_event) {
    StreamResult result = client.Stream(bundle, on_event);
    if (!result.ok()) throw Error(result.terminal.error_code, result.terminal.text);
    text = std::move(result.text);
    outcome.finish_reason = result.terminal.finish_reason;
  } else {
    text = client.Complete(bundle);
    outcome.finish_reason = "stop";
  }
  outcome.review = ParseReview(text, tmpl, std::move(paper_id), client.config().model_id);
  return outcome;
}

CurationRun CurateFile(const AppConfig& config, const std::filesystem::path& input_path,
                       const std::filesystem::path& output_path) {
  LoadOptions load;
  load.collapse_revisions = true;
  const Corpus raw = LoadCorpus(input_path, load);
  CurationRun run;
  const Corpus curated = Curate(raw, config.curation, &run.report);
  if (output_path.empty()) {
    run.run_dir = CreateRunDir(config.results_dir, "curate");
    run.output_path = run.run_dir / "curated.jsonl";
  } else {
    run.output_path = output_path;
  }
  SaveCorpus(curated, run.output_path);
  return run;
}

EvaluationRun EvaluateCorpus(const AppConfig& config, const Corpus& corpus,
                             const std::string& model_id) {
  EvaluationRun run;
  run.rows = BuildEvalRows(corpus, model_id);
  run.report = Aggregate(model_id, run.rows);
  run.human_recommendation = HumanRecommendationStats(corpus, run.rows);
  const EvalReport reports[] = {run.report};
  run.markdown = RenderReport(reports, {}, HumanBaseline{run.human_recommendation});

  run.run_dir = CreateRunDir(config.results_dir, "eval");
  std::string lines;
  for (const auto& row : run.rows) lines += EvalRowToJsonLine(row, model_id) + "\n";
  WriteTextFile(run.run_dir / "eval_rows.jsonl", lines);
  WriteTextFile(run.run_dir / "report.md", run.markdown);
  return run;
}

ArenaSummary ArenaCorpus(const AppConfig& config, const Corpus& corpus, const std::string& model_a,
                         const std::string& model_b, bool both_orders) {
  InferenceClient judge(config.judge, config.max_concurrency);
  ArenaOptions options;
  options.both_orders = both_orders;
  options.max_parallel = config.max_concurrency;
  ArenaSummary summary;
  summary.run = RunArena(corpus, model_a, model_b, judge, options);
  summary.records = WinRates(summary.run.verdicts);
  summary.markdown = RenderReport({}, summary.records);

  summary.run_dir = CreateRunDir(config.results_dir, "arena");
  std::string lines;
  for (const auto& v : summary.run.verdicts) lines += ArenaVerdictToJsonLine(v) + "\n";
  WriteTextFile(summary.run_dir / "arena_verdicts.jsonl", lines);
  WriteTextFile(summary.run_dir / "report.md", summary.markdown);
  return summary;
}

}  // namespace reviewkit
