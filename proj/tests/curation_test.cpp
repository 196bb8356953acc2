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

#include <algorithm>
#include <regex>
#include <sstream>

#include "reviewkit/corpus.hpp"
#include "reviewkit/error.hpp"
#include "test_support.hpp"

namespace reviewkit {
namespace {

struct AppendixCase {
  std::string name;
  std::string doc;
  std::string expected_heading;  // empty: no appendix
};

std::vector<AppendixCase> AppendixCases() {
  std::vector<AppendixCase> out;
  std::istringstream index(rktest::ReadFile(rktest::SourcePath("tests/data/appendix/expected.txt")));
  std::string line;
  while (std::getline(index, line)) {
    const auto tab = line.find('\t');
    AppendixCase c;
    c.name = line.substr(0, tab);
    c.doc = rktest::ReadFile(rktest::SourcePath("tests/data/appendix/" + c.name));
    c.expected_heading = line.substr(tab + 1) == "NONE" ? "" : line.substr(tab + 1);
    out.push_back(std::move(c));
  }
  return out;
}

TEST(StripAppendixTest, FixtureSetCutsAtExpectedHeading) {
  const auto cases = AppendixCases();
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) {
    const std::string out = StripAppendix(c.doc);
    ASSERT_TRUE(c.doc.starts_with(out)) << c.name;
    if (c.expected_heading.empty()) {
      EXPECT_EQ(out, c.doc) << c.name;
    } else {
      const std::size_t at = c.doc.find("\n" + c.expected_heading + "\n");
      ASSERT_NE(at, std::string::npos) << c.name;
      EXPECT_EQ(out, c.doc.substr(0, at + 1)) << c.name;
    }
  }
}

TEST(StripAppendixTest, Idempotent) {
  for (const auto& c : AppendixCases()) {
    const std::string once = StripAppendix(c.doc);
    EXPECT_EQ(StripAppendix(once), once) << c.name;
  }
}

TEST(StripAppendixTest, SmallCases) {
  EXPECT_EQ(StripAppendix(""), "");
  EXPECT_EQ(StripAppendix("text\n## Appendix"), "text\n");
  EXPECT_EQ(StripAppendix("## Appendix\nall of it"), "");
  EXPECT_EQ(StripAppendix("Appendix\n========\n"), "Appendix\n========\n");
  EXPECT_EQ(StripAppendix("## Appendixes are listed below\nx"), "");
  EXPECT_EQ(StripAppendix("## A Study\nbody\n"), "## A Study\nbody\n");
}

TEST(LengthFilterTest, OnePercentOfHundredDropsEachExtreme) {
  std::vector<std::int64_t> counts(100);
  std::iota(counts.begin(), counts.end(), 1);
  std::shuffle(counts.begin(), counts.end(), rktest::Rng(5));
  const auto keep = LengthFilterMask(counts, 0.01);
  std::vector<std::int64_t> removed;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!keep[i]) removed.push_back(counts[i]);
  }
  std::sort(removed.begin(), removed.end());
  EXPECT_EQ(removed, (std::vector<std::int64_t>{1, 100}));
}

TEST(LengthFilterTest, FloorWithRoundingEpsilon) {
  std::vector<std::int64_t> counts(100, 10);
  const auto keep = LengthFilterMask(counts, 0.29);
  EXPECT_EQ(std::count(keep.begin(), keep.end(), false), 58);
  const auto small = LengthFilterMask(std::vector<std::int64_t>(99, 1), 0.01);
  EXPECT_EQ(std::count(small.begin(), small.end(), false), 0);
  EXPECT_THROW(LengthFilterMask(counts, 0.5), Error);
  EXPECT_THROW(LengthFilterMask(counts, -0.1), Error);
}

TEST(LengthFilterTest, TiesRankedByPosition) {
  const std::vector<std::int64_t> counts = {5, 5, 5, 5};
  const auto keep = LengthFilterMask(counts, 0.25);
  EXPECT_EQ(keep, (std::vector<bool>{false, true, true, false}));
}

TEST(LengthFilterPropertyTest, RemovesExactlyTwoFloorQN) {
  auto rng = rktest::Rng(17);
  for (int iter = 0; iter < 500; ++iter) {
    const int n = rktest::UniformInt(rng, 0, 400);
    const double q = std::uniform_real_distribution<double>(0.0, 0.49)(rng);
    std::vector<std::int64_t> counts(n);
    for (auto& c : counts) c = rktest::UniformInt(rng, 1, 50);
    const auto keep = LengthFilterMask(counts, q);
    const auto per_tail = static_cast<std::size_t>(std::floor(q * n + 1e-9));
    const auto removed = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), false));
    ASSERT_EQ(removed, 2 * per_tail);
    // Every survivor is within the removed extremes.
    std::int64_t max_low = std::numeric_limits<std::int64_t>::min();
    std::int64_t min_high = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    if (per_tail > 0) {
      max_low = sorted[per_tail - 1];
      min_high = sorted[n - per_tail];
    }
    for (int i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      EXPECT_GE(counts[i], max_low);
      EXPECT_LE(counts[i], min_high);
    }
  }
}

TEST(ConfidenceFilterTest, KeepsAtOrAboveVenueThreshold) {
  std::vector<HumanReview> reviews;
  for (int i = 0; i < 50; ++i) {
    reviews.push_back({"r" + std::to_string(i), i % 2 ? "p1" : "p2", {}, 3, 1 + i % 5});
  }
  const std::map<std::string, std::string> venue_by_paper = {{"p1", "a"}, {"p2", "b"}};
  const auto kept = FilterByConfidence(reviews, {{"a", 4}, {"b", 2}}, venue_by_paper);
  for (const auto& r : kept) EXPECT_GE(r.confidence_raw, r.paper_id == "p1" ? 4 : 2);
  const auto expected = std::count_if(reviews.begin(), reviews.end(), [](const HumanReview& r) {
    return r.confidence_raw >= (r.paper_id == "p1" ? 4 : 2);
  });
  EXPECT_EQ(static_cast<long>(kept.size()), expected);
  EXPECT_THROW(FilterByConfidence(reviews, {{"a", 4}}, venue_by_paper), Error);
}

Corpus RawCorpus() {
  Corpus c;
  c.AddTemplate(ParseTemplate(rktest::kTinyTemplate));
  for (int i = 1; i <= 100; ++i) {
    std::string text;
    for (int w = 0; w < i; ++w) text += "word ";
    if (i == 50) text += "\n## Appendix\nextra extra extra\n";
    c.AddPaper(MakePaper("p" + std::to_string(i), "tiny", "", text));
    for (int k = 0; k < 2; ++k) {
      HumanReview r{"r" + std::to_string(i) + "-" + std::to_string(k), "p" + std::to_string(i),
                    {{"Summary", std::string(static_cast<std::size_t>(i + k), 'x')}}, 2, 1 + (i + k) % 5};
      c.AddReview(r);
    }
  }
  return c;
}

TEST(CurateTest, AppliesEveryRule) {
  CurationReport report;
  const Corpus out = Curate(RawCorpus(), {}, &report);
  EXPECT_EQ(report.papers_in, 100u);
  EXPECT_EQ(report.reviews_in, 200u);
  EXPECT_EQ(report.appendices_stripped, 1u);
  EXPECT_EQ(report.papers_removed_by_length, 2u);
  EXPECT_EQ(report.reviews_removed_with_paper, 4u);
  // 196 remaining reviews pooled: floor(1.96) = 1 per tail.
  EXPECT_EQ(report.reviews_removed_by_length, 2u);
  EXPECT_EQ(report.papers_out, 98u);
  EXPECT_EQ(out.papers().size(), 98u);
  EXPECT_FALSE(out.papers().contains("p1"));
  EXPECT_FALSE(out.papers().contains("p100"));
  EXPECT_EQ(out.papers().at("p50").markdown_text.find("Appendix"), std::string::npos);
  EXPECT_EQ(out.papers().at("p50").word_count, 50);
  for (const auto& [pid, reviews] : out.reviews()) {
    for (const auto& r : reviews) EXPECT_GE(r.confidence_raw, 4);
  }
  EXPECT_EQ(report.reviews_out, out.review_count());
  EXPECT_EQ(report.reviews_in,
            report.reviews_out + report.reviews_removed_by_length + report.reviews_removed_with_paper +
                report.reviews_removed_by_confidence);
}

TEST(CurateTest, PureAndDeterministic) {
  const Corpus raw = RawCorpus();
  const Corpus copy = raw;
  CurationOptions opts;
  opts.confidence_threshold_by_venue["tiny"] = 2;
  const Corpus a = Curate(raw, opts, nullptr);
  const Corpus b = Curate(raw, opts, nullptr);
  EXPECT_EQ(a, b);
  EXPECT_EQ(raw, copy);
}

}  // namespace
}  // namespace reviewkit
