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

#ifndef REVIEWKIT_TESTS_TEST_SUPPORT_HPP_
#define REVIEWKIT_TESTS_TEST_SUPPORT_HPP_

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace rktest {

inline std::filesystem::path SourcePath(const std::string& relative) {
  return std::filesystem::path(RK_SOURCE_DIR) / relative;
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "rktest-XXXXXX").string();
    path_ = ::mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Small two-field template used across tests.
inline constexpr const char* kTinyTemplate =
    "venue: tiny\n"
    "field: Summary\n"
    "  kind: text\n"
    "  description: What the paper does.\n"
    "field: Rating\n"
    "  kind: rating\n"
    "  recommendation: true\n"
    "  description: Overall score.\n"
    "  scale: 1=reject, 2, 3, 4=accept\n";

inline std::mt19937_64 Rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::string RandomWord(std::mt19937_64& rng, int min_len = 3, int max_len = 9) {
  static constexpr char kLetters[] = "abcdefghijklmnopqrstuvwxyz";
  const int n = UniformInt(rng, min_len, max_len);
  std::string w;
  for (int i = 0; i < n; ++i) w += kLetters[UniformInt(rng, 0, 25)];
  return w;
}

inline std::string RandomSentence(std::mt19937_64& rng, int words) {
  std::string s;
  for (int i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += RandomWord(rng);
  }
  return s;
}

}  // namespace rktest

#endif  // REVIEWKIT_TESTS_TEST_SUPPORT_HPP_
