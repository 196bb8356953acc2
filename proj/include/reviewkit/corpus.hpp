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

#ifndef REVIEWKIT_CORPUS_HPP_
#define REVIEWKIT_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reviewkit/review_parse.hpp"
#include "reviewkit/template_engine.hpp"

namespace reviewkit {

enum class PaperSource { kConvertedPdf, kPastedMarkdown, kFetched };

std::string_view PaperSourceName(PaperSource source);
PaperSource PaperSourceFromName(std::string_view name);

struct PaperRecord {
  std::string paper_id;
  std::string venue_id;
  std::string title;
  std::string markdown_text;
  std::int64_t word_count = 0;
  std::int64_t revision_timestamp = 0;  // epoch milliseconds
  PaperSource source = PaperSource::kPastedMarkdown;

  bool operator==(const PaperRecord&) const = default;
};

// Builds a record with word_count derived from the text.
PaperRecord MakePaper(std::string paper_id, std::string venue_id, std::string title,
                      std::string markdown_text,
                      PaperSource source = PaperSource::kPastedMarkdown,
                      std::int64_t revision_timestamp = 0);

struct HumanReview {
  std::string review_id;
  std::string paper_id;
  FieldMap field_contents;
  int recommendation_raw = 0;
  int confidence_raw = 0;

  bool operator==(const HumanReview&) const = default;
};

// Whitespace word count of all field contents.
std::int64_t ReviewWordCount(const HumanReview& review);

// Papers, human reviews and generated reviews keyed for evaluation. The Add*
// methods enforce the cross-reference invariants, so a Corpus value is
// always consistent.
class Corpus {
 public:
  void AddTemplate(ReviewTemplate tmpl);
  void AddPaper(PaperRecord paper);
  void AddReview(HumanReview review);
  void AddGeneratedReview(GeneratedReview review);

  const std::map<std::string, ReviewTemplate>& templates() const { return templates_; }
  const std::map<std::string, PaperRecord>& papers() const { return papers_; }
  const std::map<std::string, std::vector<HumanReview>>& reviews() const { return reviews_; }
  const std::map<std::string, std::vector<GeneratedReview>>& generated() const { return generated_; }

  const ReviewTemplate& TemplateFor(const std::string& paper_id) const;
  const std::vector<HumanReview>& ReviewsOf(const std::string& paper_id) const;
  // First generated review of `paper_id` by `model_id`, or nullptr.
  const GeneratedReview* GeneratedBy(const std::string& paper_id, const std::string& model_id) const;

  std::size_t review_count() const;
  bool empty() const { return templates_.empty() && papers_.empty(); }

  bool operator==(const Corpus&) const = default;

 private:
  std::map<std::string, ReviewTemplate> templates_;
  std::map<std::string, PaperRecord> papers_;
  std::map<std::string, std::vector<HumanReview>> reviews_;
  std::map<std::string, std::vector<GeneratedReview>> generated_;
  std::set<std::string> review_ids_;
};

// ---- JSONL persistence -----------------------------------------------------

struct LoadOptions {
  // Treat repeated paper_id records as revisions and keep the earliest one
  // instead of failing. Used for raw, uncurated dumps.
  bool collapse_revisions = false;
};

Corpus ParseCorpusJsonl(std::string_view content, const LoadOptions& options = {});
Corpus LoadCorpus(const std::filesystem::path& path, const LoadOptions& options = {});
std::string CorpusToJsonl(const Corpus& corpus);
void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path);

// One JSONL line (no newline) for a generated review.
std::string GeneratedReviewToJsonLine(const GeneratedReview& review);

// ---- Curation ----------------------------------------------------------------

struct Revision {
  std::int64_t timestamp = 0;
  std::string locator;
};

// Locator of the earliest revision; ties go to the lexicographically smallest
// locator. Throws Error(kInvalidArgument) on an empty list.
std::string SelectEarliestRevision(std::span<const Revision> revisions);

// Prefix of `markdown` before the first appendix heading, or the input when
// there is none.
std::string StripAppendix(std::string_view markdown);

// keep[i] is false for the floor(q*N) shortest and floor(q*N) longest items.
// Ties are ranked by input position. Requires 0 <= q < 0.5.
std::vector<bool> LengthFilterMask(std::span<const std::int64_t> word_counts, double q);

template <typename T, typename CountFn>
std::vector<T> FilterByLength(std::vector<T> items, double q, CountFn count_of) {
  std::vector<std::int64_t> counts;
  counts.reserve(items.size());
  for (const T& item : items) counts.push_back(static_cast<std::int64_t>(count_of(item)));
  const std::vector<bool> keep = LengthFilterMask(counts, q);
  std::vector<T> kept;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (keep[i]) kept.push_back(std::move(items[i]));
  }
  return kept;
}

// Keeps reviews whose confidence_raw >= the threshold of their paper's venue.
// Throws Error(kNotFound) when a paper or venue threshold is missing.
std::vector<HumanReview> FilterByConfidence(
    std::vector<HumanReview> reviews,
    const std::map<std::string, int>& threshold_by_venue,
    const std::map<std::string, std::string>& venue_by_paper);

inline constexpr int kDefaultConfidenceThreshold = 4;
inline constexpr double kDefaultLengthQuantile = 0.01;

struct CurationOptions {
  double length_quantile = kDefaultLengthQuantile;
  // Venues absent from the map use default_confidence_threshold.
  std::map<std::string, int> confidence_threshold_by_venue;
  int default_confidence_threshold = kDefaultConfidenceThreshold;
  bool strip_appendices = true;
};

struct CurationReport {
  std::size_t papers_in = 0;
  std::size_t reviews_in = 0;
  std::size_t appendices_stripped = 0;
  std::size_t papers_removed_by_length = 0;
  std::size_t reviews_removed_by_length = 0;
  std::size_t reviews_removed_with_paper = 0;
  std::size_t reviews_removed_by_confidence = 0;
  std::size_t papers_out = 0;
  std::size_t reviews_out = 0;
};

// Appendix stripping, per-kind length filtering and confidence thresholding.
// Generated reviews are carried over for surviving papers.
Corpus Curate(const Corpus& raw, const CurationOptions& options, CurationReport* report);

// ---- Review-platform client ------------------------------------------------

struct ForumRecords {
  // Metadata only: markdown_text stays empty until the PDF is converted.
  PaperRecord paper;
  std::vector<HumanReview> reviews;
  std::size_t skipped_notes = 0;
};

// Maps a notes JSON document (`{"notes": [...]}`) onto records. Exposed for
// testing the mapping without a server.
ForumRecords MapForumNotes(std::string_view json_body, std::string_view forum_id);

// HTTP GET <endpoint>/notes?forum=<forum_id>. Read-only.
ForumRecords FetchForumRecords(const std::string& endpoint_url, const std::string& forum_id,
                               double timeout_seconds = 30.0);

// Fetches several forums with at most `max_parallel` requests in flight.
// Results are returned in the order of `forum_ids`.
std::vector<ForumRecords> FetchForums(const std::string& endpoint_url,
                                      const std::vector<std::string>& forum_ids,
                                      std::size_t max_parallel = 4);

}  // namespace reviewkit

#endif  // REVIEWKIT_CORPUS_HPP_
