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

#ifndef REVIEWKIT_PIPELINE_HPP_
#define REVIEWKIT_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reviewkit/config.hpp"
#include "reviewkit/corpus.hpp"
#include "reviewkit/evaluation.hpp"
#include "reviewkit/inference_client.hpp"
#include "reviewkit/review_parse.hpp"
#include "reviewkit/template_engine.hpp"

namespace reviewkit {

// Built-in templates plus `<venue_id>.tmpl` files from a directory; files
// override built-ins of the same venue. Thread-safe.
class TemplateStore {
 public:
  explicit TemplateStore(std::filesystem::path dir = {});

  std::optional<ReviewTemplate> Get(const std::string& venue_id) const;
  std::vector<ReviewTemplate> List() const;
  // Validates and stores; persisted to the directory when one is set.
  void Put(const ReviewTemplate& tmpl);

 private:
  mutable std::mutex mu_;
  std::filesystem::path dir_;
  std::map<std::string, ReviewTemplate> templates_;
};

// Creates `<results_dir>/<UTC timestamp>-<kind>[-n]`; never reuses a path.
std::filesystem::path CreateRunDir(const std::filesystem::path& results_dir, std::string_view kind);

void WriteTextFile(const std::filesystem::path& path, std::string_view content);

struct GenerationOutcome {
  GeneratedReview review;
  std::string finish_reason;
};

// Builds the reviewer prompt, checks the context budget (kContextTooLong),
// runs the model (streaming when `on_event` is set) and parses the result.
// Upstream failures are rethrown as Error with the stream's code.
GenerationOutcome GenerateReview(const InferenceClient& client, const ReviewTemplate& tmpl,
                                 std::string_view paper_text, std::size_t context_tokens,
                                 const StreamConsumer& on_event = nullptr,
                                 std::string paper_id = {});

struct CurationRun {
  CurationReport report;
  std::filesystem::path output_path;
  std::filesystem::path run_dir;
};

// Loads (collapsing revisions), curates and writes the curated corpus to
// `output_path`, or to `curated.jsonl` in a new run directory when empty.
CurationRun CurateFile(const AppConfig& config, const std::filesystem::path& input_path,
                       const std::filesystem::path& output_path = {});

struct EvaluationRun {
  EvalReport report;
  std::vector<PaperEvalRow> rows;
  MeanStd human_recommendation;
  std::string markdown;
  std::filesystem::path run_dir;
};

EvaluationRun EvaluateCorpus(const AppConfig& config, const Corpus& corpus,
                             const std::string& model_id);

struct ArenaSummary {
  ArenaRun run;
  std::vector<WinRecord> records;
  std::string markdown;
  std::filesystem::path run_dir;
};

ArenaSummary ArenaCorpus(const AppConfig& config, const Corpus& corpus, const std::string& model_a,
                         const std::string& model_b, bool both_orders);

}  // namespace reviewkit

#endif  // REVIEWKIT_PIPELINE_HPP_
