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

#include "reviewkit/text_util.hpp"

#include <cctype>

namespace reviewkit::text {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

char Lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = Lower(c);
  return out;
}

bool IEquals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (Lower(a[i]) != Lower(b[i])) return false;
  }
  return true;
}

bool IStartsWith(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && IEquals(s.substr(0, prefix.size()), prefix);
}

std::vector<Line> SplitLines(std::string_view doc) {
  std::vector<Line> lines;
  std::size_t start = 0;
  while (start < doc.size()) {
    std::size_t end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    std::string_view line = doc.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({start, line});
    start = end + 1;
  }
  return lines;
}

std::size_t CountWords(std::string_view s) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : s) {
    if (IsSpace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

std::size_t CountCodePoints(std::string_view s) {
  std::size_t count = 0;
  for (char c : s) {
    // Continuation bytes are 10xxxxxx.
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

std::string NormalizeHeading(std::string_view heading) {
  std::string stripped;
  stripped.reserve(heading.size());
  for (char c : heading) {
    if (c == '*' || c == '_' || c == '`') continue;
    stripped.push_back(c);
  }
  std::string_view v = Trim(stripped);
  while (!v.empty() && (v.back() == ':' || v.back() == '.')) {
    v.remove_suffix(1);
    v = Trim(v);
  }
  std::string out;
  out.reserve(v.size());
  bool pending_space = false;
  for (char c : v) {
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(Lower(c));
  }
  return out;
}

int HeadingLevel(std::string_view line, std::string_view* title) {
  int level = 0;
  while (level < static_cast<int>(line.size()) && line[level] == '#') ++level;
  if (level == 0 || level > 6) return 0;
  if (static_cast<std::size_t>(level) < line.size() && line[level] != ' ' &&
      line[level] != '\t') {
    return 0;
  }
  if (title != nullptr) {
    std::string_view t = Trim(line.substr(level));
    // Optional closing sequence: "## Title ##".
    std::size_t end = t.size();
    while (end > 0 && t[end - 1] == '#') --end;
    if (end == 0) {
      t = {};
    } else if (end < t.size() && (t[end - 1] == ' ' || t[end - 1] == '\t')) {
      t = Trim(t.substr(0, end));
    }
    *title = t;
  }
  return level;
}

}  // namespace reviewkit::text
