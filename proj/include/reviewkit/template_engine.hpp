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

#ifndef REVIEWKIT_TEMPLATE_ENGINE_HPP_
#define REVIEWKIT_TEMPLATE_ENGINE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace reviewkit {

enum class FieldKind { kFreeText, kNumericRating };

struct ScalePoint {
  int value = 0;
  // May be empty for interior points; endpoints always carry a label.
  std::string label;

  bool operator==(const ScalePoint&) const = default;
};

struct ReviewField {
  std::string name;
  FieldKind kind = FieldKind::kFreeText;
  std::string description;
  std::vector<ScalePoint> scale;  // Non-empty iff kind == kNumericRating.
  bool is_recommendation = false;

  bool operator==(const ReviewField&) const = default;

  int scale_min() const { return scale.front().value; }
  int scale_max() const { return scale.back().value; }
  bool InScale(int value) const;
};

// A venue review form. Drives the `{review_fields}` prompt placeholder and
// the section layout expected when parsing generated reviews.
struct ReviewTemplate {
  std::string venue_id;
  std::vector<ReviewField> fields;
  std::string recommendation_field;

  bool operator==(const ReviewTemplate&) const = default;

  const ReviewField& recommendation() const;
  // Lookup by normalized heading key; nullptr when absent.
  const ReviewField* FindField(std::string_view name) const;
};

// Throws Error(kInvalidArgument) describing the first violated invariant.
void ValidateTemplate(const ReviewTemplate& tmpl);

// Parses the line-oriented template file format:
//
//   venue: <venue_id>
//   field: <name>
//     kind: text | rating
//     recommendation: true
//     description: <one line>
//     scale: 1=strong reject, 2, 3=strong accept
//
// Blank lines and lines starting with '#' are ignored. Throws Error(kParse)
// for syntax problems and Error(kInvalidArgument) for invariant violations.
ReviewTemplate ParseTemplate(std::string_view text);

// Inverse of ParseTemplate: ParseTemplate(SerializeTemplate(t)) == t.
std::string SerializeTemplate(const ReviewTemplate& tmpl);

// Markdown block substituted for `{review_fields}` in prompts. One `## Name`
// heading per field, followed by its description and, for ratings, a single
// "Allowed values:" line.
std::string RenderReviewFields(const ReviewTemplate& tmpl);

// The "Allowed values: ..." line for a rating field (without newline).
std::string RenderScaleLine(const ReviewField& field);

// ICLR-style ("iclr-default") and NeurIPS-style ("neurips-default") forms.
// Both are reconstructions of public venue forms, not verbatim copies.
std::vector<ReviewTemplate> BuiltinTemplates();

}  // namespace reviewkit

#endif  // REVIEWKIT_TEMPLATE_ENGINE_HPP_
