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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <mutex>
#include <thread>

#include "reviewkit/error.hpp"
#include "reviewkit/evaluation.hpp"
#include "reviewkit/prompting.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

bool IsWordChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Position just past a standalone match of `word` at `pos`, or npos.
std::size_t MatchWord(std::string_view lower, std::size_t pos, std::string_view word) {
  if (lower.compare(pos, word.size(), word) != 0) return std::string_view::npos;
  if (pos > 0 && IsWordChar(lower[pos - 1])) return std::string_view::npos;
  return pos + word.size();
}

bool StandaloneEnd(std::string_view lower, std::size_t end) {
  return end != std::string_view::npos && (end >= lower.size() || !IsWordChar(lower[end]));
}

std::optional<ArenaOutcome> LastLiteral(std::string_view lower) {
  std::optional<ArenaOutcome> found;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::size_t end = MatchWord(lower, i, "tie"); StandaloneEnd(lower, end)) {
      found = ArenaOutcome::kTie;
      continue;
    }
    std::size_t end = MatchWord(lower, i, "review");
    if (end == std::string_view::npos) continue;
    std::size_t j = end;
    while (j < lower.size() && IsBlank(lower[j])) ++j;
    if (j == end || j >= lower.size()) continue;
    if ((lower[j] == 'a' || lower[j] == 'b') && StandaloneEnd(lower, j + 1)) {
      found = lower[j] == 'a' ? ArenaOutcome::kA : ArenaOutcome::kB;
    }
  }
  return found;
}

}  // namespace

std::string_view ArenaOutcomeName(ArenaOutcome outcome) {
  switch (outcome) {
    case ArenaOutcome::kA: return "A";
    case ArenaOutcome::kB: return "B";
    case ArenaOutcome::kTie: return "Tie";
  }
  return "Tie";
}

ArenaOutcome ParseVerdict(std::string_view judge_text) {
  const std::string lower = text::ToLower(judge_text);
  const std::size_t decision = lower.rfind("decision");
  if (decision != std::string::npos) {
    if (auto outcome = LastLiteral(std::string_view(lower).substr(decision))) return *outcome;
  }
  if (auto outcome = LastLiteral(lower)) return *outcome;
  throw Error(ErrorCode::kUnparseableVerdict, "unparseable verdict");
}

ArenaVerdict RunArenaPair(const std::string& paper_id, const ReviewTemplate& tmpl,
                          std::span<const HumanReview> experts, const std::string& model_a,
                          std::string_view review_a, const std::string& model_b,
                          std::string_view review_b, const InferenceClient& judge) {
  const PromptBundle bundle = BuildJudgeMessages(tmpl, experts, review_a, review_b);
  ArenaVerdict verdict;
  verdict.paper_id = paper_id;
  verdict.model_a = model_a;
  verdict.model_b = model_b;
  verdict.rationale = judge.Complete(bundle);
  verdict.outcome = ParseVerdict(verdict.rationale);
  return verdict;
}

ArenaRun RunArena(const Corpus& corpus, const std::string& model_a, const std::string& model_b,
                  const InferenceClient& judge, const ArenaOptions& options) {
  struct Task {
    const std::string* paper_id;
    const GeneratedReview* first;
    const GeneratedReview* second;
    bool swapped;
  };
  ArenaRun run;
  std::vector<Task> tasks;
  for (const auto& [paper_id, paper] : corpus.papers()) {
    const GeneratedReview* a = corpus.GeneratedBy(paper_id, model_a);
    const GeneratedReview* b = corpus.GeneratedBy(paper_id, model_b);
    if (a == nullptr || b == nullptr || corpus.ReviewsOf(paper_id).empty()) {
      ++run.skipped_papers;
      continue;
    }
    tasks.push_back({&paper_id, a, b, false});
    if (options.both_orders) tasks.push_back({&paper_id, b, a, true});
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      try {
        ArenaVerdict v = RunArenaPair(*t.paper_id, corpus.TemplateFor(*t.paper_id),
                                      corpus.ReviewsOf(*t.paper_id), t.first->model_id,
                                      t.first->raw_markdown, t.second->model_id,
                                      t.second->raw_markdown, judge);
        v.order_swapped = t.swapped;
        std::lock_guard lock(mu);
        run.verdicts.push_back(std::move(v));
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        run.failures.push_back(*t.paper_id + ": " + e.what());
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::clamp<std::size_t>(options.max_parallel, 1, std::max<std::size_t>(1, tasks.size()));
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  std::sort(run.verdicts.begin(), run.verdicts.end(), [](const ArenaVerdict& x, const ArenaVerdict& y) {
    return std::tie(x.paper_id, x.order_swapped) < std::tie(y.paper_id, y.order_swapped);
  });
  std::sort(run.failures.begin(), run.failures.end());
  return run;
}

std::vector<WinRecord> WinRates(std::span<const ArenaVerdict> verdicts) {
  std::map<std::pair<std::string, std::string>, WinRecord> table;
  auto record = [&table](const std::string& model, const std::string& opponent) -> WinRecord& {
    WinRecord& r = table[{model, opponent}];
    r.model = model;
    r.opponent = opponent;
    return r;
  };
  for (const ArenaVerdict& v : verdicts) {
    if (v.model_a == v.model_b) continue;
    WinRecord& a = record(v.model_a, v.model_b);
    WinRecord& b = record(v.model_b, v.model_a);
    switch (v.outcome) {
      case ArenaOutcome::kA:
        ++a.wins;
        ++b.losses;
        break;
      case ArenaOutcome::kB:
        ++a.losses;
        ++b.wins;
        break;
      case ArenaOutcome::kTie:
        ++a.ties;
        ++b.ties;
        break;
    }
  }
  std::vector<WinRecord> out;
  for (auto& [key, r] : table) {
    const double total = static_cast<double>(r.wins + r.ties + r.losses);
    r.win_share = (static_cast<double>(r.wins) + 0.5 * static_cast<double>(r.ties)) / total;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace reviewkit
