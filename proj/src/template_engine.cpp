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

#include "reviewkit/template_engine.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>

#include "reviewkit/error.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

constexpr std::string_view kUnmatchedKey = "_unmatched";

[[noreturn]] void Invalid(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

[[noreturn]] void ParseFailure(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::kParse,
              "template line " + std::to_string(line_no) + ": " + msg);
}

// Parses an optionally signed integer prefix of `s`; advances `s` past it.
std::optional<int> TakeInt(std::string_view& s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  std::size_t digits_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits_begin) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + i, value);
  if (ec != std::errc() || ptr != s.data() + i) return std::nullopt;
  s.remove_prefix(i);
  return value;
}

// True when `rest` (text following a comma) begins a new "<int>[=...]" entry.
bool StartsScaleEntry(std::string_view rest) {
  rest = text::Trim(rest);
  if (!TakeInt(rest)) return false;
  rest = text::Trim(rest);
  return rest.empty() || rest.front() == '=' || rest.front() == ',';
}

// "x=label" after a comma: an entry whose value is not an integer.
bool LooksLikeBadEntry(std::string_view rest) {
  rest = text::Trim(rest);
  const std::size_t eq = rest.find('=');
  if (eq == 0 || eq == std::string_view::npos) return false;
  const std::string_view key = text::Trim(rest.substr(0, eq));
  return key.find_first_of(" \t,") == std::string_view::npos;
}

std::vector<ScalePoint> ParseScale(std::string_view spec, std::size_t line_no) {
  std::vector<ScalePoint> scale;
  std::string_view rest = spec;
  while (true) {
    rest = text::Trim(rest);
    std::optional<int> value = TakeInt(rest);
    if (!value) ParseFailure(line_no, "malformed scale entry near '" + std::string(rest) + "'");
    ScalePoint point{*value, ""};
    rest = text::Trim(rest);
    if (!rest.empty() && rest.front() == '=') {
      rest.remove_prefix(1);
      std::size_t end = 0;
      while (true) {
        end = rest.find(',', end);
        if (end == std::string_view::npos || StartsScaleEntry(rest.substr(end + 1))) break;
        if (LooksLikeBadEntry(rest.substr(end + 1))) {
          ParseFailure(line_no, "malformed scale entry near '" + std::string(text::Trim(rest.substr(end + 1))) + "'");
        }
        ++end;
      }
      std::string_view label = rest.substr(0, end);
      point.label = std::string(text::Trim(label));
      rest = end == std::string_view::npos ? std::string_view() : rest.substr(end);
    }
    scale.push_back(std::move(point));
    rest = text::Trim(rest);
    if (rest.empty()) break;
    if (rest.front() != ',') ParseFailure(line_no, "malformed scale: expected ','");
    rest.remove_prefix(1);
  }
  return scale;
}

bool HasNewline(std::string_view s) {
  return s.find('\n') != std::string_view::npos || s.find('\r') != std::string_view::npos;
}

bool IsTrimmed(std::string_view s) { return text::Trim(s).size() == s.size(); }

}  // namespace

bool ReviewField::InScale(int value) const {
  return std::any_of(scale.begin(), scale.end(),
                     [value](const ScalePoint& p) { return p.value == value; });
}

const ReviewField& ReviewTemplate::recommendation() const {
  const ReviewField* field = FindField(recommendation_field);
  if (field == nullptr || !field->is_recommendation) {
    Invalid("template '" + venue_id + "' has no recommendation field");
  }
  return *field;
}

const ReviewField* ReviewTemplate::FindField(std::string_view name) const {
  const std::string key = text::NormalizeHeading(name);
  for (const ReviewField& f : fields) {
    if (text::NormalizeHeading(f.name) == key) return &f;
  }
  return nullptr;
}

void ValidateTemplate(const ReviewTemplate& tmpl) {
  if (tmpl.venue_id.empty()) Invalid("venue id is empty");
  if (std::any_of(tmpl.venue_id.begin(), tmpl.venue_id.end(),
                  [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '/'; })) {
    Invalid("venue id '" + tmpl.venue_id + "' contains whitespace or '/'");
  }
  if (tmpl.fields.empty()) Invalid("template '" + tmpl.venue_id + "' has no fields");

  std::set<std::string> keys;
  int recommendation_count = 0;
  for (const ReviewField& f : tmpl.fields) {
    const std::string key = text::NormalizeHeading(f.name);
    if (f.name.empty() || key.empty()) Invalid("field name is empty");
    if (HasNewline(f.name) || !IsTrimmed(f.name) || f.name.front() == '#') {
      Invalid("field name '" + f.name + "' is not a single trimmed line");
    }
    if (key == text::NormalizeHeading(kUnmatchedKey)) Invalid("field name '" + f.name + "' is reserved");
    if (!keys.insert(key).second) Invalid("duplicate field name '" + f.name + "'");
    if (HasNewline(f.description) || !IsTrimmed(f.description)) {
      Invalid("description of '" + f.name + "' must be one trimmed line");
    }
    if (f.is_recommendation) {
      ++recommendation_count;
      if (f.kind != FieldKind::kNumericRating) {
        Invalid("recommendation field '" + f.name + "' must be a rating");
      }
    }
    if (f.kind == FieldKind::kFreeText) {
      if (!f.scale.empty()) Invalid("text field '" + f.name + "' has a scale");
      continue;
    }
    if (f.scale.size() < 2) Invalid("rating field '" + f.name + "' needs at least 2 scale values");
    for (std::size_t i = 0; i < f.scale.size(); ++i) {
      const ScalePoint& p = f.scale[i];
      if (i > 0 && p.value <= f.scale[i - 1].value) {
        Invalid("scale of '" + f.name + "' is not strictly increasing");
      }
      if (HasNewline(p.label) || !IsTrimmed(p.label) || p.label.find(';') != std::string::npos) {
        Invalid("scale label '" + p.label + "' of '" + f.name + "' is malformed");
      }
      for (std::size_t c = p.label.find(','); c != std::string::npos; c = p.label.find(',', c + 1)) {
        if (StartsScaleEntry(std::string_view(p.label).substr(c + 1))) {
          Invalid("scale label '" + p.label + "' would split into several entries");
        }
      }
    }
    if (f.scale.front().label.empty() || f.scale.back().label.empty()) {
      Invalid("scale endpoints of '" + f.name + "' must be labelled");
    }
  }
  if (recommendation_count == 0) Invalid("no recommendation field");
  if (recommendation_count > 1) Invalid("multiple recommendation fields");
  const ReviewField* rec = tmpl.FindField(tmpl.recommendation_field);
  if (rec == nullptr || !rec->is_recommendation) {
    Invalid("recommendation_field '" + tmpl.recommendation_field + "' does not name the recommendation field");
  }
}

ReviewTemplate ParseTemplate(std::string_view text_in) {
  ReviewTemplate tmpl;
  bool have_venue = false;
  struct Pending {
    ReviewField field;
    bool have_kind = false;
    std::set<std::string> seen_keys;
  };
  std::optional<Pending> current;
  std::size_t current_line = 0;

  auto finish = [&]() {
    if (!current) return;
    if (!current->have_kind) ParseFailure(current_line, "field '" + current->field.name + "' has no kind");
    if (current->field.kind == FieldKind::kNumericRating && current->field.scale.empty()) {
      ParseFailure(current_line, "rating field '" + current->field.name + "' has no scale");
    }
    if (current->field.is_recommendation) tmpl.recommendation_field = current->field.name;
    tmpl.fields.push_back(std::move(current->field));
    current.reset();
  };

  std::size_t line_no = 0;
  for (const text::Line& raw : text::SplitLines(text_in)) {
    ++line_no;
    std::string_view line = text::Trim(raw.text);
    if (line.empty() || line.front() == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) ParseFailure(line_no, "expected 'key: value'");
    std::string_view key = text::Trim(line.substr(0, colon));
    std::string_view value = text::Trim(line.substr(colon + 1));

    if (key == "venue") {
      if (have_venue) ParseFailure(line_no, "duplicate 'venue'");
      if (current || !tmpl.fields.empty()) ParseFailure(line_no, "'venue' must precede all fields");
      tmpl.venue_id = std::string(value);
      have_venue = true;
      continue;
    }
    if (key == "field") {
      finish();
      if (value.empty()) ParseFailure(line_no, "empty field name");
      current.emplace();
      current->field.name = std::string(value);
      current_line = line_no;
      continue;
    }
    if (key != "kind" && key != "recommendation" && key != "description" && key != "scale") {
      ParseFailure(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (!current) ParseFailure(line_no, "'" + std::string(key) + "' outside a field block");
    if (!current->seen_keys.insert(std::string(key)).second) {
      ParseFailure(line_no, "duplicate key '" + std::string(key) + "'");
    }
    ReviewField& f = current->field;
    if (key == "kind") {
      if (value == "text") {
        f.kind = FieldKind::kFreeText;
      } else if (value == "rating") {
        f.kind = FieldKind::kNumericRating;
      } else {
        ParseFailure(line_no, "kind must be 'text' or 'rating'");
      }
      current->have_kind = true;
    } else if (key == "recommendation") {
      if (value == "true") {
        f.is_recommendation = true;
      } else if (value != "false") {
        ParseFailure(line_no, "recommendation must be 'true' or 'false'");
      }
    } else if (key == "description") {
      f.description = std::string(value);
    } else {
      f.scale = ParseScale(value, line_no);
    }
  }
  finish();

  if (!have_venue && tmpl.fields.empty()) throw Error(ErrorCode::kParse, "empty template");
  if (!have_venue) throw Error(ErrorCode::kParse, "template has no 'venue' line");
  ValidateTemplate(tmpl);
  return tmpl;
}

std::string SerializeTemplate(const ReviewTemplate& tmpl) {
  std::ostringstream out;
  out << "venue: " << tmpl.venue_id << "\n";
  for (const ReviewField& f : tmpl.fields) {
    out << "field: " << f.name << "\n";
    out << "  kind: " << (f.kind == FieldKind::kNumericRating ? "rating" : "text") << "\n";
    if (f.is_recommendation) out << "  recommendation: true\n";
    if (!f.description.empty()) out << "  description: " << f.description << "\n";
    if (!f.scale.empty()) {
      out << "  scale: ";
      for (std::size_t i = 0; i < f.scale.size(); ++i) {
        if (i > 0) out << ", ";
        out << f.scale[i].value;
        if (!f.scale[i].label.empty()) out << "=" << f.scale[i].label;
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string RenderScaleLine(const ReviewField& field) {
  std::string line = "Allowed values: ";
  for (std::size_t i = 0; i < field.scale.size(); ++i) {
    if (i > 0) line += "; ";
    line += std::to_string(field.scale[i].value);
    if (!field.scale[i].label.empty()) line += ": " + field.scale[i].label;
  }
  return line;
}

std::string RenderReviewFields(const ReviewTemplate& tmpl) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.fields.size(); ++i) {
    const ReviewField& f = tmpl.fields[i];
    if (i > 0) out += "\n\n";
    out += "## " + f.name;
    if (!f.description.empty()) out += "\n" + f.description;
    if (f.kind == FieldKind::kNumericRating) out += "\n" + RenderScaleLine(f);
  }
  return out;
}

}  // namespace reviewkit
