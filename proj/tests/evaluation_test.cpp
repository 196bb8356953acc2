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

#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>

#include "reviewkit/error.hpp"
#include "reviewkit/evaluation.hpp"
#include "reviewkit/mock_llm.hpp"
#include "test_support.hpp"

namespace reviewkit {
namespace {

using json = nlohmann::json;

std::vector<NormalizedScore> Norms(std::initializer_list<double> values) {
  std::vector<NormalizedScore> out;
  for (double v : values) out.emplace_back(v);
  return out;
}

ReviewTemplate Builtin(const std::string& venue) {
  for (auto& t : BuiltinTemplates()) {
    if (t.venue_id == venue) return t;
  }
  throw std::runtime_error("no builtin " + venue);
}

HumanReview Human(const std::string& id, const std::string& paper, int rec) {
  HumanReview r;
  r.review_id = id;
  r.paper_id = paper;
  r.field_contents = {{"Summary", "Human summary " + id + "."}};
  r.recommendation_raw = rec;
  r.confidence_raw = 4;
  return r;
}

GeneratedReview Generated(const std::string& paper, const std::string& model, std::optional<int> rec,
                          const std::string& text = "generated") {
  GeneratedReview g;
  g.paper_id = paper;
  g.model_id = model;
  g.raw_markdown = text;
  g.recommendation_raw = rec;
  return g;
}

Corpus TinyCorpus() {
  Corpus c;
  c.AddTemplate(ParseTemplate(rktest::kTinyTemplate));
  c.AddPaper(MakePaper("p1", "tiny", "One", "first paper text"));
  c.AddPaper(MakePaper("p2", "tiny", "Two", "second paper text"));
  c.AddPaper(MakePaper("p3", "tiny", "Three", "third paper text"));
  c.AddReview(Human("r1", "p1", 1));
  c.AddReview(Human("r2", "p1", 4));
  c.AddReview(Human("r3", "p2", 2));
  return c;
}

TEST(NormalizeTest, EndpointsAndMidpoints) {
  EXPECT_EQ(NormalizeScore(1, 1, 5).value(), 1.0);
  EXPECT_EQ(NormalizeScore(5, 1, 5).value(), 10.0);
  EXPECT_EQ(NormalizeScore(3, 1, 5).value(), 5.5);
  EXPECT_EQ(NormalizeScore(1, 1, 4).value(), 1.0);
  EXPECT_EQ(NormalizeScore(2, 1, 4).value(), 4.0);
  EXPECT_EQ(NormalizeScore(6, Builtin("iclr-default").recommendation()).value(), 6.0);
}

TEST(NormalizeTest, RejectsOutOfRange) {
  EXPECT_THROW(NormalizeScore(0, 1, 5), Error);
  EXPECT_THROW(NormalizeScore(6, 1, 5), Error);
  EXPECT_THROW(NormalizeScore(1, 1, 1), Error);
  EXPECT_THROW(NormalizedScore(0.5), Error);
  EXPECT_THROW(NormalizedScore(10.0001), Error);
  EXPECT_THROW(NormalizedScore(std::nan("")), Error);
}

TEST(NormalizeTest, MonotoneAndBoundedOnRandomScales) {
  auto rng = rktest::Rng(11);
  for (int i = 0; i < 1000; ++i) {
    const int lo = rktest::UniformInt(rng, -20, 20);
    const int hi = lo + rktest::UniformInt(rng, 1, 30);
    double prev = 0.0;
    for (int v = lo; v <= hi; ++v) {
      const double n = NormalizeScore(v, lo, hi).value();
      EXPECT_GT(n, prev);
      prev = n;
    }
    EXPECT_EQ(NormalizeScore(lo, lo, hi).value(), 1.0);
    EXPECT_EQ(NormalizeScore(hi, lo, hi).value(), 10.0);
  }
  for (int v = 1; v <= 10; ++v) EXPECT_EQ(NormalizeScore(v, 1, 10).value(), v);
}

TEST(MetricsTest, ExactMatchAndAvgError) {
  const auto humans = Norms({6, 6, 8, 3});
  EXPECT_TRUE(ExactMatch(NormalizedScore(6), humans));
  EXPECT_EQ(AvgError(NormalizedScore(6), humans), 0.25);
  EXPECT_TRUE(ExactMatch(NormalizedScore(8), humans));
  EXPECT_EQ(AvgError(NormalizedScore(8), humans), 2.25);
  EXPECT_FALSE(ExactMatch(NormalizedScore(5), humans));
  EXPECT_TRUE(ExactMatch(NormalizedScore(6 + 1e-10), humans));
  EXPECT_FALSE(ExactMatch(NormalizedScore(6 + 1e-6), humans));
  EXPECT_THROW(ExactMatch(NormalizedScore(6), {}), Error);
  EXPECT_THROW(AvgError(NormalizedScore(6), {}), Error);
}

TEST(MetricsTest, MeanStd) {
  EXPECT_FALSE(ComputeMeanStd({}).mean);
  const std::vector<double> one{3.0};
  const MeanStd s1 = ComputeMeanStd(one);
  EXPECT_EQ(*s1.mean, 3.0);
  EXPECT_FALSE(s1.std);
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  const MeanStd s = ComputeMeanStd(v);
  EXPECT_DOUBLE_EQ(*s.mean, 5.0);
  EXPECT_DOUBLE_EQ(*s.std, std::sqrt(32.0 / 7.0));
}

TEST(MetricsTest, AggregateExcludesIncompleteRows) {
  std::vector<PaperEvalRow> rows;
  rows.push_back(MakeEvalRow("a", NormalizedScore(6), Norms({6, 8})));
  rows.push_back(MakeEvalRow("b", NormalizedScore(4), Norms({5})));
  rows.push_back(MakeEvalRow("c", std::nullopt, Norms({5})));
  rows.push_back(MakeEvalRow("d", NormalizedScore(4), {}));
  const EvalReport r = Aggregate("m", rows);
  EXPECT_EQ(r.n_papers, 4u);
  EXPECT_EQ(r.n_excluded, 2u);
  EXPECT_EQ(*r.em_percent, 50.0);
  EXPECT_DOUBLE_EQ(*r.avg_error.mean, 1.0);
  EXPECT_DOUBLE_EQ(*r.avg_error.std, 0.0);
  EXPECT_DOUBLE_EQ(*r.avg_recommendation.mean, 5.0);

  const EvalReport empty = Aggregate("m", std::span<const PaperEvalRow>(rows).subspan(2));
  EXPECT_FALSE(empty.em_percent);
  EXPECT_EQ(FormatMeanStd(empty.avg_error, 2), "n/a");
}

TEST(MetricsTest, BuildEvalRowsFromCorpus) {
  Corpus c = TinyCorpus();
  EXPECT_THROW(BuildEvalRows(c, "m"), Error);
  c.AddGeneratedReview(Generated("p1", "m", 4));
  c.AddGeneratedReview(Generated("p2", "m", std::nullopt));
  c.AddGeneratedReview(Generated("p3", "m", 2));
  c.AddGeneratedReview(Generated("p1", "other", 1));
  const auto rows = BuildEvalRows(c, "m");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].paper_id, "p1");
  EXPECT_EQ(rows[0].generated_norm->value(), 10.0);
  EXPECT_TRUE(*rows[0].em);
  EXPECT_DOUBLE_EQ(*rows[0].abs_error, 4.5);
  EXPECT_FALSE(rows[1].generated_norm);
  EXPECT_TRUE(rows[2].human_norms.empty());
  const EvalReport r = Aggregate("m", rows);
  EXPECT_EQ(r.n_excluded, 2u);
  EXPECT_EQ(*r.em_percent, 100.0);

  const MeanStd h = HumanRecommendationStats(c, rows);
  EXPECT_DOUBLE_EQ(*h.mean, (1.0 + 10.0 + 4.0) / 3.0);
  try {
    BuildEvalRows(c, "absent");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNothingToEvaluate);
  }
}

TEST(VerdictTest, JudgeExampleIsA) {
  EXPECT_EQ(ParseVerdict(rktest::ReadFile(rktest::SourcePath("tests/data/judge_example.txt"))),
            ArenaOutcome::kA);
}

TEST(VerdictTest, Variants) {
  EXPECT_EQ(ParseVerdict("**Final Decision**: **Review B**"), ArenaOutcome::kB);
  EXPECT_EQ(ParseVerdict("Final decision: Tie"), ArenaOutcome::kTie);
  EXPECT_EQ(ParseVerdict("final DECISION - review a"), ArenaOutcome::kA);
  EXPECT_EQ(ParseVerdict("Review A is thorough but Review B is better.\nDecision: Review B"),
            ArenaOutcome::kB);
  // Text before the decision mentions the other review.
  EXPECT_EQ(ParseVerdict("Review B misses points.\n**Final Decision**: **Review A** beats Review B"),
            ArenaOutcome::kB);
  EXPECT_EQ(ParseVerdict("I prefer Review A."), ArenaOutcome::kA);
  EXPECT_EQ(ParseVerdict("Decision: Review\nA"), ArenaOutcome::kA);
  EXPECT_EQ(ParseVerdict("Decision: it's a tie."), ArenaOutcome::kTie);
  EXPECT_THROW(ParseVerdict("Reviews are fine. Untied. Reviewer Alpha."), Error);
  EXPECT_THROW(ParseVerdict(""), Error);
  try {
    ParseVerdict("no idea");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnparseableVerdict);
  }
}

std::vector<ArenaVerdict> VerdictsFor(std::size_t w, std::size_t t, std::size_t l) {
  std::vector<ArenaVerdict> out;
  auto add = [&](ArenaOutcome o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      ArenaVerdict v;
      v.paper_id = "p" + std::to_string(out.size());
      v.model_a = "ours";
      v.model_b = "base";
      v.outcome = o;
      out.push_back(v);
    }
  };
  add(ArenaOutcome::kA, w);
  add(ArenaOutcome::kTie, t);
  add(ArenaOutcome::kB, l);
  return out;
}

TEST(WinRatesTest, SixtyTenThirty) {
  const auto records = WinRates(VerdictsFor(60, 10, 30));
  ASSERT_EQ(records.size(), 2u);
  const WinRecord& base = records[0];
  const WinRecord& ours = records[1];
  EXPECT_EQ(ours.model, "ours");
  EXPECT_EQ(ours.wins, 60u);
  EXPECT_EQ(ours.ties, 10u);
  EXPECT_EQ(ours.losses, 30u);
  EXPECT_EQ(ours.win_share, 0.65);
  EXPECT_EQ(base.win_share, 0.35);
}

TEST(WinRatesTest, SwappedOrderCountsForTheRightModel) {
  ArenaVerdict v;
  v.paper_id = "p";
  v.model_a = "base";
  v.model_b = "ours";
  v.outcome = ArenaOutcome::kB;
  v.order_swapped = true;
  const auto records = WinRates(std::vector<ArenaVerdict>{v});
  for (const auto& r : records) {
    EXPECT_EQ(r.wins, r.model == "ours" ? 1u : 0u);
  }
}

TEST(WinRatesTest, FlipSymmetryProperty) {
  auto rng = rktest::Rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto w = static_cast<std::size_t>(rktest::UniformInt(rng, 0, 20));
    const auto t = static_cast<std::size_t>(rktest::UniformInt(rng, 0, 20));
    const auto l = static_cast<std::size_t>(rktest::UniformInt(rng, w + t == 0 ? 1 : 0, 20));
    auto verdicts = VerdictsFor(w, t, l);
    const auto before = WinRates(verdicts);
    for (auto& v : verdicts) {
      if (v.outcome == ArenaOutcome::kA) {
        v.outcome = ArenaOutcome::kB;
      } else if (v.outcome == ArenaOutcome::kB) {
        v.outcome = ArenaOutcome::kA;
      }
    }
    const auto after = WinRates(verdicts);
    ASSERT_EQ(before.size(), 2u);
    ASSERT_EQ(after.size(), 2u);
    EXPECT_NEAR(before[0].win_share + before[1].win_share, 1.0, 1e-12);
    EXPECT_EQ(before[0].win_share, after[1].win_share);
    EXPECT_EQ(before[0].wins, after[0].losses);
  }
}

TEST(ReportTest, TableShape) {
  EvalReport r;
  r.model_id = "ours";
  r.n_papers = 2;
  r.em_percent = 55.5;
  r.avg_error = {0.96, 0.85};
  r.avg_recommendation = {5.4, 1.1};
  const std::vector<EvalReport> reports{r};
  const auto records = WinRates(VerdictsFor(60, 10, 30));
  const std::string md = RenderReport(reports, records, HumanBaseline{{5.3, 1.0}});
  EXPECT_NE(md.find("| ours | 55.5 | 0.96±0.85 |"), std::string::npos) << md;
  EXPECT_NE(md.find("| ours | 5.4±1.1 |"), std::string::npos);
  EXPECT_NE(md.find("| Human Reviewers | 5.3±1.0 |"), std::string::npos);
  EXPECT_NE(md.find("## Arena against base"), std::string::npos);
  EXPECT_NE(md.find("| ours | 60 | 10 | 30 | 65.0 |"), std::string::npos);
  EXPECT_EQ(FormatMeanStd({2.0, std::nullopt}, 2), "2.00±n/a");
}

TEST(ReportTest, JsonLines) {
  const auto row = MakeEvalRow("p", NormalizedScore(6), Norms({6, 8}));
  const json j = json::parse(EvalRowToJsonLine(row, "m"));
  EXPECT_EQ(j["kind"], "eval_row");
  EXPECT_EQ(j["em"], true);
  EXPECT_EQ(j["abs_error"], 1.0);
  const json none = json::parse(EvalRowToJsonLine(MakeEvalRow("p", std::nullopt, {}), "m"));
  EXPECT_TRUE(none["generated_norm"].is_null());
  ArenaVerdict v;
  v.paper_id = "p";
  v.outcome = ArenaOutcome::kTie;
  EXPECT_EQ(json::parse(ArenaVerdictToJsonLine(v))["outcome"], "Tie");
}

TEST(ArenaTest, RunArenaBothOrders) {
  Corpus c = TinyCorpus();
  c.AddGeneratedReview(Generated("p1", "ours", 4, "MARKER_GOOD"));
  c.AddGeneratedReview(Generated("p1", "base", 2, "MARKER_PLAIN"));
  c.AddGeneratedReview(Generated("p2", "ours", 3, "plain"));
  c.AddGeneratedReview(Generated("p2", "base", 3, "plain"));
  c.AddGeneratedReview(Generated("p3", "ours", 3, "plain"));

  // The judge prefers the review carrying MARKER_GOOD, or calls a tie.
  MockLlmServer server([](const MockRequest& req) {
    const std::size_t strong = req.user.find("MARKER_GOOD");
    const std::size_t weak = req.user.find("MARKER_PLAIN");
    MockReply r;
    if (strong == std::string::npos) {
      r.content = "**Final Decision**: **Tie**";
    } else {
      r.content = strong < weak ? "**Final Decision**: **Review A**" : "**Final Decision**: **Review B**";
    }
    return r;
  });
  server.Start();
  GenerationConfig jc;
  jc.endpoint_url = server.endpoint_url();
  jc.model_id = "judge";
  const InferenceClient judge(jc, 2);
  ArenaOptions opts;
  opts.both_orders = true;
  const ArenaRun run = RunArena(c, "ours", "base", judge, opts);
  EXPECT_EQ(run.skipped_papers, 1u);
  EXPECT_TRUE(run.failures.empty());
  ASSERT_EQ(run.verdicts.size(), 4u);
  EXPECT_EQ(run.verdicts[0].paper_id, "p1");
  EXPECT_FALSE(run.verdicts[0].order_swapped);
  EXPECT_EQ(run.verdicts[0].outcome, ArenaOutcome::kA);
  EXPECT_TRUE(run.verdicts[1].order_swapped);
  EXPECT_EQ(run.verdicts[1].model_a, "base");
  EXPECT_EQ(run.verdicts[1].outcome, ArenaOutcome::kB);
  EXPECT_EQ(run.verdicts[2].outcome, ArenaOutcome::kTie);

  const auto records = WinRates(run.verdicts);
  for (const auto& r : records) {
    if (r.model == "ours") {
      EXPECT_EQ(r.wins, 2u);
      EXPECT_EQ(r.ties, 2u);
      EXPECT_EQ(r.win_share, 0.75);
    }
  }
  EXPECT_EQ(server.request_count(), 4u);
}

TEST(ArenaTest, UnparseableVerdictIsReportedAsFailure) {
  Corpus c = TinyCorpus();
  c.AddGeneratedReview(Generated("p1", "ours", 4));
  c.AddGeneratedReview(Generated("p1", "base", 2));
  MockLlmServer server([](const MockRequest&) {
    MockReply r;
    r.content = "I cannot decide.";
    return r;
  });
  server.Start();
  GenerationConfig jc;
  jc.endpoint_url = server.endpoint_url();
  jc.model_id = "judge";
  const InferenceClient judge(jc, 1);
  const ArenaRun run = RunArena(c, "ours", "base", judge);
  EXPECT_TRUE(run.verdicts.empty());
  ASSERT_EQ(run.failures.size(), 1u);
  EXPECT_NE(run.failures[0].find("p1: unparseable verdict"), std::string::npos);
}

}  // namespace
}  // namespace reviewkit
