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
#include <cmath>
#include <numeric>

#include "reviewkit/corpus.hpp"
#include "reviewkit/error.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsSpace(char c) { return c == ' ' || c == '\t'; }

// Drops a leading "3", "3.", "3.1" style section number.
std::string_view StripSectionNumber(std::string_view title) {
  std::size_t i = 0;
  while (i < title.size() && (IsDigit(title[i]) || title[i] == '.')) ++i;
  if (i == 0 || !IsDigit(title[0])) return title;
  if (i < title.size() && !IsSpace(title[i])) return title;
  return text::Trim(title.substr(i));
}

std::string WithoutEmphasis(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != '*' && c != '_' && c != '`') out.push_back(c);
  }
  return std::string(text::Trim(out));
}

// "A Proofs", "B.2 Extra results", "C. Details".
bool IsLetteredSection(std::string_view title) {
  if (title.size() < 3 || !IsUpper(title[0])) return false;
  std::size_t i = 1;
  while (i + 1 < title.size() && title[i] == '.' && IsDigit(title[i + 1])) {
    ++i;
    while (i < title.size() && IsDigit(title[i])) ++i;
  }
  if (i < title.size() && title[i] == '.') ++i;
  if (i >= title.size() || !IsSpace(title[i])) return false;
  return !text::Trim(title.substr(i)).empty();
}

}  // namespace

std::string SelectEarliestRevision(std::span<const Revision> revisions) {
  if (revisions.empty()) throw Error(ErrorCode::kInvalidArgument, "no revisions to choose from");
  const Revision* best = &revisions.front();
  for (const Revision& r : revisions) {
    if (r.timestamp < best->timestamp ||
        (r.timestamp == best->timestamp && r.locator < best->locator)) {
      best = &r;
    }
  }
  return best->locator;
}

std::string StripAppendix(std::string_view markdown) {
  bool in_fence = false;
  bool after_references = false;
  for (const text::Line& line : text::SplitLines(markdown)) {
    std::string_view trimmed = text::Trim(line.text);
    if (trimmed.starts_with("```") || trimmed.starts_with("~~~")) {
      in_fence = !in_fence;
      continue;
    }
    std::string_view title;
    if (in_fence || text::HeadingLevel(line.text, &title) == 0) continue;
    const std::string plain = WithoutEmphasis(title);
    const std::string_view unnumbered = StripSectionNumber(plain);
    const std::string key = text::NormalizeHeading(unnumbered);
    if (key.starts_with("appendix") || key.starts_with("appendices")) {
      return std::string(markdown.substr(0, line.offset));
    }
    if (after_references && IsLetteredSection(unnumbered)) {
      return std::string(markdown.substr(0, line.offset));
    }
    if (key == "references" || key == "bibliography") after_references = true;
  }
  return std::string(markdown);
}

std::vector<bool> LengthFilterMask(std::span<const std::int64_t> word_counts, double q) {
  if (!(q >= 0.0 && q < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "length quantile must satisfy 0 <= q < 0.5");
  }
  const std::size_t n = word_counts.size();
  std::vector<bool> keep(n, true);
  // The epsilon absorbs binary rounding in q*N (0.29 * 100 = 28.999...).
  const auto per_tail = static_cast<std::size_t>(std::floor(q * static_cast<double>(n) + 1e-9));
  if (per_tail == 0) return keep;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return word_counts[a] < word_counts[b];
  });
  for (std::size_t i = 0; i < per_tail; ++i) {
    keep[order[i]] = false;
    keep[order[n - 1 - i]] = false;
  }
  return keep;
}

std::vector<HumanReview> FilterByConfidence(
    std::vector<HumanReview> reviews, const std::map<std::string, int>& threshold_by_venue,
    const std::map<std::string, std::string>& venue_by_paper) {
  std::vector<HumanReview> kept;
  for (HumanReview& r : reviews) {
    auto venue = venue_by_paper.find(r.paper_id);
    if (venue == venue_by_paper.end()) {
      throw Error(ErrorCode::kNotFound, "review '" + r.review_id + "' has unknown paper '" + r.paper_id + "'");
    }
    auto threshold = threshold_by_venue.find(venue->second);
    if (threshold == threshold_by_venue.end()) {
      throw Error(ErrorCode::kNotFound, "no confidence threshold for venue '" + venue->second + "'");
    }
    if (r.confidence_raw >= threshold->second) kept.push_back(std::move(r));
  }
  return kept;
}

Corpus Curate(const Corpus& raw, const CurationOptions& options, CurationReport* report) {
  CurationReport local;
  CurationReport& rep = report != nullptr ? *report : local;
  rep = CurationReport{};
  rep.papers_in = raw.papers().size();
  rep.reviews_in = raw.review_count();

  std::vector<PaperRecord> papers;
  for (const auto& [id, p] : raw.papers()) {
    PaperRecord copy = p;
    if (options.strip_appendices) {
      std::string stripped = StripAppendix(copy.markdown_text);
      if (stripped.size() != copy.markdown_text.size() && !text::Trim(stripped).empty()) {
        copy.markdown_text = std::move(stripped);
        copy.word_count = static_cast<std::int64_t>(text::CountWords(copy.markdown_text));
        ++rep.appendices_stripped;
      }
    }
    papers.push_back(std::move(copy));
  }
  const std::size_t before = papers.size();
  papers = FilterByLength(std::move(papers), options.length_quantile,
                          [](const PaperRecord& p) { return p.word_count; });
  rep.papers_removed_by_length = before - papers.size();

  std::map<std::string, std::string> venue_by_paper;
  for (const PaperRecord& p : papers) venue_by_paper[p.paper_id] = p.venue_id;

  std::vector<HumanReview> reviews;
  for (const auto& [pid, list] : raw.reviews()) {
    if (!venue_by_paper.contains(pid)) {
      rep.reviews_removed_with_paper += list.size();
      continue;
    }
    reviews.insert(reviews.end(), list.begin(), list.end());
  }
  std::size_t reviews_before = reviews.size();
  reviews = FilterByLength(std::move(reviews), options.length_quantile, ReviewWordCount);
  rep.reviews_removed_by_length = reviews_before - reviews.size();

  std::map<std::string, int> thresholds = options.confidence_threshold_by_venue;
  for (const auto& [venue, t] : raw.templates()) {
    thresholds.try_emplace(venue, options.default_confidence_threshold);
  }
  reviews_before = reviews.size();
  reviews = FilterByConfidence(std::move(reviews), thresholds, venue_by_paper);
  rep.reviews_removed_by_confidence = reviews_before - reviews.size();

  Corpus out;
  for (const auto& [venue, t] : raw.templates()) out.AddTemplate(t);
  for (PaperRecord& p : papers) out.AddPaper(std::move(p));
  for (HumanReview& r : reviews) out.AddReview(std::move(r));
  for (const auto& [pid, list] : raw.generated()) {
    if (!venue_by_paper.contains(pid)) continue;
    for (const GeneratedReview& g : list) out.AddGeneratedReview(g);
  }
  rep.papers_out = out.papers().size();
  rep.reviews_out = out.review_count();
  return out;
}

}  // namespace reviewkit
