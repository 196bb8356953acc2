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

#include "reviewkit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "reviewkit/error.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

using ojson = nlohmann::ordered_json;

ojson FieldMapToJson(const FieldMap& fields) {
  ojson obj = ojson::object();
  for (const auto& [k, v] : fields) obj[k] = v;
  return obj;
}

FieldMap FieldMapFromJson(const ojson& obj) {
  if (!obj.is_object()) throw Error(ErrorCode::kParse, "field_contents must be an object");
  FieldMap fields;
  for (const auto& [k, v] : obj.items()) fields.emplace_back(k, v.get<std::string>());
  return fields;
}

ojson TemplateToJson(const ReviewTemplate& t) {
  ojson fields = ojson::array();
  for (const ReviewField& f : t.fields) {
    ojson jf;
    jf["name"] = f.name;
    jf["kind"] = f.kind == FieldKind::kNumericRating ? "numeric_rating" : "free_text";
    jf["description"] = f.description;
    if (f.kind == FieldKind::kNumericRating) {
      ojson scale = ojson::array();
      for (const ScalePoint& p : f.scale) scale.push_back({{"value", p.value}, {"label", p.label}});
      jf["scale"] = std::move(scale);
    }
    jf["is_recommendation"] = f.is_recommendation;
    fields.push_back(std::move(jf));
  }
  ojson j;
  j["kind"] = "template";
  j["venue_id"] = t.venue_id;
  j["fields"] = std::move(fields);
  j["recommendation_field"] = t.recommendation_field;
  return j;
}

ReviewTemplate TemplateFromJson(const ojson& j) {
  ReviewTemplate t;
  t.venue_id = j.at("venue_id").get<std::string>();
  for (const ojson& jf : j.at("fields")) {
    ReviewField f;
    f.name = jf.at("name").get<std::string>();
    const std::string kind = jf.at("kind").get<std::string>();
    if (kind == "numeric_rating") {
      f.kind = FieldKind::kNumericRating;
    } else if (kind == "free_text") {
      f.kind = FieldKind::kFreeText;
    } else {
      throw Error(ErrorCode::kParse, "unknown field kind '" + kind + "'");
    }
    f.description = jf.value("description", "");
    if (jf.contains("scale")) {
      for (const ojson& p : jf.at("scale")) {
        f.scale.push_back({p.at("value").get<int>(), p.value("label", "")});
      }
    }
    f.is_recommendation = jf.value("is_recommendation", false);
    t.fields.push_back(std::move(f));
  }
  t.recommendation_field = j.at("recommendation_field").get<std::string>();
  ValidateTemplate(t);
  return t;
}

ojson PaperToJson(const PaperRecord& p) {
  ojson j;
  j["kind"] = "paper";
  j["paper_id"] = p.paper_id;
  j["venue_id"] = p.venue_id;
  j["title"] = p.title;
  j["markdown_text"] = p.markdown_text;
  j["word_count"] = p.word_count;
  j["revision_timestamp"] = p.revision_timestamp;
  j["source"] = PaperSourceName(p.source);
  return j;
}

PaperRecord PaperFromJson(const ojson& j) {
  PaperRecord p;
  p.paper_id = j.at("paper_id").get<std::string>();
  p.venue_id = j.at("venue_id").get<std::string>();
  p.title = j.value("title", "");
  p.markdown_text = j.at("markdown_text").get<std::string>();
  p.word_count = j.contains("word_count")
                     ? j.at("word_count").get<std::int64_t>()
                     : static_cast<std::int64_t>(text::CountWords(p.markdown_text));
  p.revision_timestamp = j.value("revision_timestamp", std::int64_t{0});
  p.source = PaperSourceFromName(j.value("source", "pasted_markdown"));
  return p;
}

ojson ReviewToJson(const HumanReview& r) {
  ojson j;
  j["kind"] = "review";
  j["review_id"] = r.review_id;
  j["paper_id"] = r.paper_id;
  j["field_contents"] = FieldMapToJson(r.field_contents);
  j["recommendation_raw"] = r.recommendation_raw;
  j["confidence_raw"] = r.confidence_raw;
  return j;
}

HumanReview ReviewFromJson(const ojson& j) {
  HumanReview r;
  r.review_id = j.at("review_id").get<std::string>();
  r.paper_id = j.at("paper_id").get<std::string>();
  if (j.contains("field_contents")) r.field_contents = FieldMapFromJson(j.at("field_contents"));
  r.recommendation_raw = j.at("recommendation_raw").get<int>();
  r.confidence_raw = j.at("confidence_raw").get<int>();
  return r;
}

ojson GeneratedToJson(const GeneratedReview& g) {
  ojson j;
  j["kind"] = "generated_review";
  j["paper_id"] = g.paper_id;
  j["model_id"] = g.model_id;
  j["raw_markdown"] = g.raw_markdown;
  j["field_contents"] = FieldMapToJson(g.field_contents);
  j["recommendation_raw"] = g.recommendation_raw ? ojson(*g.recommendation_raw) : ojson(nullptr);
  j["missing_fields"] = g.missing_fields;
  return j;
}

GeneratedReview GeneratedFromJson(const ojson& j) {
  GeneratedReview g;
  g.paper_id = j.at("paper_id").get<std::string>();
  g.model_id = j.at("model_id").get<std::string>();
  g.raw_markdown = j.at("raw_markdown").get<std::string>();
  if (j.contains("field_contents")) g.field_contents = FieldMapFromJson(j.at("field_contents"));
  if (j.contains("recommendation_raw") && !j.at("recommendation_raw").is_null()) {
    g.recommendation_raw = j.at("recommendation_raw").get<int>();
  }
  if (j.contains("missing_fields")) g.missing_fields = j.at("missing_fields").get<std::vector<std::string>>();
  return g;
}

}  // namespace

std::string_view PaperSourceName(PaperSource source) {
  switch (source) {
    case PaperSource::kConvertedPdf: return "converted_pdf";
    case PaperSource::kPastedMarkdown: return "pasted_markdown";
    case PaperSource::kFetched: return "fetched";
  }
  return "pasted_markdown";
}

PaperSource PaperSourceFromName(std::string_view name) {
  if (name == "converted_pdf") return PaperSource::kConvertedPdf;
  if (name == "pasted_markdown") return PaperSource::kPastedMarkdown;
  if (name == "fetched") return PaperSource::kFetched;
  throw Error(ErrorCode::kParse, "unknown paper source '" + std::string(name) + "'");
}

PaperRecord MakePaper(std::string paper_id, std::string venue_id, std::string title,
                      std::string markdown_text, PaperSource source,
                      std::int64_t revision_timestamp) {
  PaperRecord p;
  p.paper_id = std::move(paper_id);
  p.venue_id = std::move(venue_id);
  p.title = std::move(title);
  p.word_count = static_cast<std::int64_t>(text::CountWords(markdown_text));
  p.markdown_text = std::move(markdown_text);
  p.source = source;
  p.revision_timestamp = revision_timestamp;
  return p;
}

std::int64_t ReviewWordCount(const HumanReview& review) {
  std::int64_t n = 0;
  for (const auto& [name, body] : review.field_contents) {
    n += static_cast<std::int64_t>(text::CountWords(body));
  }
  return n;
}

void Corpus::AddTemplate(ReviewTemplate tmpl) {
  ValidateTemplate(tmpl);
  const std::string id = tmpl.venue_id;
  if (!templates_.emplace(id, std::move(tmpl)).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate template '" + id + "'");
  }
}

void Corpus::AddPaper(PaperRecord paper) {
  if (paper.paper_id.empty()) throw Error(ErrorCode::kInvalidArgument, "paper_id is empty");
  if (text::Trim(paper.markdown_text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "paper '" + paper.paper_id + "' has empty markdown_text");
  }
  if (paper.word_count != static_cast<std::int64_t>(text::CountWords(paper.markdown_text))) {
    throw Error(ErrorCode::kInvalidArgument,
                "paper '" + paper.paper_id + "' word_count does not match its text");
  }
  if (!templates_.contains(paper.venue_id)) {
    throw Error(ErrorCode::kNotFound,
                "paper '" + paper.paper_id + "' references unknown venue '" + paper.venue_id + "'");
  }
  const std::string id = paper.paper_id;
  if (!papers_.emplace(id, std::move(paper)).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate paper '" + id + "'");
  }
}

void Corpus::AddReview(HumanReview review) {
  auto paper = papers_.find(review.paper_id);
  if (paper == papers_.end()) {
    throw Error(ErrorCode::kNotFound, "review '" + review.review_id +
                                          "' references unknown paper '" + review.paper_id + "'");
  }
  const ReviewField& rec = templates_.at(paper->second.venue_id).recommendation();
  if (!rec.InScale(review.recommendation_raw)) {
    throw Error(ErrorCode::kInvalidArgument,
                "review '" + review.review_id + "' recommendation " +
                    std::to_string(review.recommendation_raw) + " is not on the venue scale");
  }
  if (!review_ids_.insert(review.review_id).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate review '" + review.review_id + "'");
  }
  reviews_[review.paper_id].push_back(std::move(review));
}

void Corpus::AddGeneratedReview(GeneratedReview review) {
  auto paper = papers_.find(review.paper_id);
  if (paper == papers_.end()) {
    throw Error(ErrorCode::kNotFound, "generated review by '" + review.model_id +
                                          "' references unknown paper '" + review.paper_id + "'");
  }
  const ReviewTemplate& tmpl = templates_.at(paper->second.venue_id);
  if (review.recommendation_raw && !tmpl.recommendation().InScale(*review.recommendation_raw)) {
    throw Error(ErrorCode::kInvalidArgument, "generated recommendation is not on the venue scale");
  }
  for (const auto& [name, body] : review.field_contents) {
    if (name != kUnmatchedSections && tmpl.FindField(name) == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "generated review field '" + name + "' is not in the template");
    }
  }
  generated_[review.paper_id].push_back(std::move(review));
}

const ReviewTemplate& Corpus::TemplateFor(const std::string& paper_id) const {
  auto it = papers_.find(paper_id);
  if (it == papers_.end()) throw Error(ErrorCode::kNotFound, "unknown paper '" + paper_id + "'");
  return templates_.at(it->second.venue_id);
}

const std::vector<HumanReview>& Corpus::ReviewsOf(const std::string& paper_id) const {
  static const std::vector<HumanReview> kNone;
  auto it = reviews_.find(paper_id);
  return it == reviews_.end() ? kNone : it->second;
}

const GeneratedReview* Corpus::GeneratedBy(const std::string& paper_id,
                                           const std::string& model_id) const {
  auto it = generated_.find(paper_id);
  if (it == generated_.end()) return nullptr;
  for (const GeneratedReview& g : it->second) {
    if (g.model_id == model_id) return &g;
  }
  return nullptr;
}

std::size_t Corpus::review_count() const {
  std::size_t n = 0;
  for (const auto& [pid, list] : reviews_) n += list.size();
  return n;
}

Corpus ParseCorpusJsonl(std::string_view content, const LoadOptions& options) {
  std::vector<ReviewTemplate> templates;
  std::vector<std::pair<PaperRecord, std::size_t>> papers;
  std::vector<HumanReview> reviews;
  std::vector<GeneratedReview> generated;

  std::size_t line_no = 0;
  for (const text::Line& line : text::SplitLines(content)) {
    ++line_no;
    if (text::Trim(line.text).empty()) continue;
    try {
      const ojson j = ojson::parse(line.text);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "template") {
        templates.push_back(TemplateFromJson(j));
      } else if (kind == "paper") {
        papers.emplace_back(PaperFromJson(j), line_no);
      } else if (kind == "review") {
        reviews.push_back(ReviewFromJson(j));
      } else if (kind == "generated_review") {
        generated.push_back(GeneratedFromJson(j));
      } else {
        throw Error(ErrorCode::kParse, "unknown record kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (options.collapse_revisions) {
    std::map<std::string, std::vector<std::size_t>> by_id;
    for (std::size_t i = 0; i < papers.size(); ++i) by_id[papers[i].first.paper_id].push_back(i);
    std::vector<std::pair<PaperRecord, std::size_t>> kept;
    for (const auto& [id, indices] : by_id) {
      std::vector<Revision> revisions;
      for (std::size_t idx : indices) {
        // Zero-padded line numbers make the lexicographic tie-break follow
        // file order.
        char locator[32];
        std::snprintf(locator, sizeof(locator), "%020zu", idx);
        revisions.push_back({papers[idx].first.revision_timestamp, locator});
      }
      const std::size_t chosen = std::stoull(SelectEarliestRevision(revisions));
      kept.push_back(std::move(papers[chosen]));
    }
    papers = std::move(kept);
  }

  Corpus corpus;
  for (ReviewTemplate& t : templates) corpus.AddTemplate(std::move(t));
  for (ReviewTemplate& t : BuiltinTemplates()) {
    const bool referenced = std::any_of(papers.begin(), papers.end(),
                                        [&](const auto& p) { return p.first.venue_id == t.venue_id; });
    if (referenced && !corpus.templates().contains(t.venue_id)) corpus.AddTemplate(std::move(t));
  }
  for (auto& [p, where] : papers) {
    try {
      corpus.AddPaper(std::move(p));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(where) + ": " + e.what());
    }
  }
  for (HumanReview& r : reviews) corpus.AddReview(std::move(r));
  for (GeneratedReview& g : generated) corpus.AddGeneratedReview(std::move(g));
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCorpusJsonl(buffer.str(), options);
}

std::string CorpusToJsonl(const Corpus& corpus) {
  std::string out;
  auto emit = [&out](const ojson& j) {
    out += j.dump();
    out += '\n';
  };
  for (const auto& [id, t] : corpus.templates()) emit(TemplateToJson(t));
  for (const auto& [id, p] : corpus.papers()) emit(PaperToJson(p));
  for (const auto& [id, list] : corpus.reviews()) {
    for (const HumanReview& r : list) emit(ReviewToJson(r));
  }
  for (const auto& [id, list] : corpus.generated()) {
    for (const GeneratedReview& g : list) emit(GeneratedToJson(g));
  }
  return out;
}

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus '" + path.string() + "'");
  out << CorpusToJsonl(corpus);
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path.string() + "'");
}

std::string GeneratedReviewToJsonLine(const GeneratedReview& review) {
  return GeneratedToJson(review).dump();
}

}  // namespace reviewkit
