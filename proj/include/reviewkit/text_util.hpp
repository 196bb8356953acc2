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

#ifndef REVIEWKIT_TEXT_UTIL_HPP_
#define REVIEWKIT_TEXT_UTIL_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace reviewkit::text {

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
bool IEquals(std::string_view a, std::string_view b);
bool IStartsWith(std::string_view s, std::string_view prefix);

// A line of a document together with its byte offset. `text` excludes the
// line terminator.
struct Line {
  std::size_t offset;
  std::string_view text;
};
std::vector<Line> SplitLines(std::string_view doc);

// Whitespace-delimited token count.
std::size_t CountWords(std::string_view s);

// Number of UTF-8 code points; invalid bytes count as one each.
std::size_t CountCodePoints(std::string_view s);

// Case-folded heading key: markdown emphasis (*, _, `) removed, surrounding
// whitespace and trailing ':' / '.' stripped, inner whitespace collapsed.
std::string NormalizeHeading(std::string_view heading);

// If `line` is an ATX heading ("#".."######" followed by a space or end of
// line), returns its level and sets `title`; otherwise returns 0.
int HeadingLevel(std::string_view line, std::string_view* title);

}  // namespace reviewkit::text

#endif  // REVIEWKIT_TEXT_UTIL_HPP_
