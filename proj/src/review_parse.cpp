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

#include "reviewkit/review_parse.hpp"

#include <cctype>
#include <charconv>

#include "reviewkit/error.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

struct Section {
  std::string heading;
  std::string body;
};

// Strips surrounding blank lines and trailing whitespace of the body.
std::string CleanBody(std::string_view body) { return std::string(text::Trim(body)); }

void Append(std::string& dst, std::string_view addition) {
  if (addition.empty()) return;
  if (!dst.empty()) dst += "\n\n";
  dst += addition;
}

}  // namespace

const std::string* FindFieldText(const FieldMap& fields, std::string_view name) {
  for (const auto& [key, value] : fields) {
    if (key == name) return &value;
  }
  return nullptr;
}

GeneratedReview ParseReview(std::string_view raw_markdown, const ReviewTemplate& tmpl,
                            std::string paper_id, std::string model_id) {
  GeneratedReview review;
  review.paper_id = std::move(paper_id);
  review.model_id = std::move(model_id);
  review.raw_markdown = std::string(raw_markdown);

  std::vector<Section> sections;
  bool in_fence = false;
  std::size_t body_begin = 0;
  for (const text::Line& line : text::SplitLines(raw_markdown)) {
    std::string_view trimmed = text::Trim(line.text);
    if (trimmed.starts_with("```") || trimmed.starts_with("~~~")) in_fence = !in_fence;
    std::string_view title;
    if (in_fence || text::HeadingLevel(line.text, &title) != 2) continue;
    if (!sections.empty()) {
      sections.back().body = CleanBody(raw_markdown.substr(body_begin, line.offset - body_begin));
    }
    sections.push_back({std::string(title), {}});
    body_begin = std::min(raw_markdown.size(), line.offset + line.text.size() + 1);
  }
  if (!sections.empty()) sections.back().body = CleanBody(raw_markdown.substr(body_begin));

  std::vector<std::optional<std::string>> contents(tmpl.fields.size());
  std::string unmatched;
  for (const Section& s : sections) {
    const std::string key = text::NormalizeHeading(s.heading);
    bool matched = false;
    for (std::size_t i = 0; i < tmpl.fields.size(); ++i) {
      if (text::NormalizeHeading(tmpl.fields[i].name) != key) continue;
      if (!contents[i]) {
        contents[i] = s.body;
      } else {
        Append(*contents[i], s.body);
      }
      matched = true;
      break;
    }
    if (!matched) {
      std::string block = "## " + s.heading;
      if (!s.body.empty()) block += "\n" + s.body;
      Append(unmatched, block);
    }
  }

  for (std::size_t i = 0; i < tmpl.fields.size(); ++i) {
    if (contents[i]) {
      review.field_contents.emplace_back(tmpl.fields[i].name, std::move(*contents[i]));
    } else {
      review.missing_fields.push_back(tmpl.fields[i].name);
    }
  }
  if (!unmatched.empty()) review.field_contents.emplace_back(std::string(kUnmatchedSections), unmatched);

  if (const ReviewField* rec = tmpl.FindField(tmpl.recommendation_field)) {
    if (const std::string* body = FindFieldText(review.field_contents, rec->name)) {
      try {
        review.recommendation_raw = ExtractRecommendation(*body, *rec);
      } catch (const Error&) {
        // Left empty; evaluation counts the review as excluded.
      }
    }
  }
  return review;
}

int ExtractRecommendation(std::string_view field_text, const ReviewField& field) {
  int paren_depth = 0;
  std::size_t i = 0;
  while (i < field_text.size()) {
    char c = field_text[i];
    if (c == '(') {
      ++paren_depth;
      ++i;
      continue;
    }
    if (c == ')') {
      if (paren_depth > 0) --paren_depth;
      ++i;
      continue;
    }
    if (!IsDigit(c)) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < field_text.size() && IsDigit(field_text[end])) ++end;
    const bool glued_before = i > 0 && (IsAlpha(field_text[i - 1]) ||
                                        (field_text[i - 1] == '.' && i > 1 && IsDigit(field_text[i - 2])));
    const bool glued_after = end < field_text.size() &&
                             (IsAlpha(field_text[end]) ||
                              (field_text[end] == '.' && end + 1 < field_text.size() &&
                               IsDigit(field_text[end + 1])));
    if (paren_depth == 0 && !glued_before && !glued_after && end - i <= 9) {
      int value = 0;
      std::from_chars(field_text.data() + i, field_text.data() + end, value);
      if (field.InScale(value)) return value;
    }
    i = end;
  }
  throw Error(ErrorCode::kRecommendationMissing, "recommendation missing");
}

std::string SerializeReview(const GeneratedReview& review) {
  std::string out = "# Review";
  const std::string* unmatched = nullptr;
  for (const auto& [name, body] : review.field_contents) {
    if (name == kUnmatchedSections) {
      unmatched = &body;
      continue;
    }
    out += "\n\n## " + name;
    if (!body.empty()) out += "\n" + body;
  }
  if (unmatched != nullptr) out += "\n\n" + *unmatched;
  out += "\n";
  return out;
}

}  // namespace reviewkit
