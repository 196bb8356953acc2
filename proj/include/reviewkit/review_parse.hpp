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

#ifndef REVIEWKIT_REVIEW_PARSE_HPP_
#define REVIEWKIT_REVIEW_PARSE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reviewkit/template_engine.hpp"

namespace reviewkit {

// Insertion-ordered field name -> text.
using FieldMap = std::vector<std::pair<std::string, std::string>>;

const std::string* FindFieldText(const FieldMap& fields, std::string_view name);

inline constexpr std::string_view kUnmatchedSections = "_unmatched";

struct GeneratedReview {
  std::string paper_id;
  std::string model_id;
  std::string raw_markdown;
  // Keys are canonical template field names in template order, plus
  // "_unmatched" (last) holding any sections that match no template field.
  FieldMap field_contents;
  std::optional<int> recommendation_raw;
  std::vector<std::string> missing_fields;

  bool operator==(const GeneratedReview&) const = default;
};

// Splits `raw_markdown` on level-2 headings and assigns each section to the
// template field whose normalized name matches. Never throws.
GeneratedReview ParseReview(std::string_view raw_markdown,
                            const ReviewTemplate& tmpl,
                            std::string paper_id = {},
                            std::string model_id = {});

// First integer token in `field_text` that belongs to the field's scale.
// Integers inside parentheses, decimals and integers glued to letters are
// skipped. Throws Error(kRecommendationMissing) when none qualifies.
int ExtractRecommendation(std::string_view field_text, const ReviewField& field);

// "# Review" followed by one "## Name" section per parsed field; unmatched
// sections are appended verbatim.
std::string SerializeReview(const GeneratedReview& review);

}  // namespace reviewkit

#endif  // REVIEWKIT_REVIEW_PARSE_HPP_
