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

#include "reviewkit/converter.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "reviewkit/error.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

constexpr std::size_t kStderrExcerpt = 400;

class TempFile {
 public:
  TempFile() {
    std::string pattern = (std::filesystem::temp_directory_path() / "rk-stderr-XXXXXX").string();
    const int fd = ::mkstemp(pattern.data());
    if (fd < 0) throw Error(ErrorCode::kIo, "cannot create temporary file");
    ::close(fd);
    path_ = pattern;
  }
  ~TempFile() {
    std::error_code ignored;
    std::filesystem::remove(path_, ignored);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::string Read() const {
    std::ifstream in(path_, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

std::string ShellQuote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += '\'';
  return out;
}

std::string ConvertPdf(std::string_view command_template, const std::filesystem::path& pdf_path) {
  const std::size_t at = command_template.find("{input}");
  if (at == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "converter command must contain {input}");
  }
  if (!std::filesystem::is_regular_file(pdf_path)) {
    throw Error(ErrorCode::kNotFound, "no such file '" + pdf_path.string() + "'");
  }
  TempFile stderr_file;
  std::string command(command_template.substr(0, at));
  command += ShellQuote(pdf_path.string());
  command += command_template.substr(at + 7);
  command = "{ " + command + " ; } 2>" + ShellQuote(stderr_file.path().string());

  std::FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) throw Error(ErrorCode::kConversion, "cannot start converter");
  std::string output;
  char buffer[8192];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
  const int status = ::pclose(pipe);

  if (status == -1 || !WIFEXITED(status)) {
    throw Error(ErrorCode::kConversion, "converter terminated abnormally");
  }
  const int exit_code = WEXITSTATUS(status);
  if (exit_code == 127) {
    throw Error(ErrorCode::kCommandNotFound,
                "converter command not found: " + std::string(text::Trim(stderr_file.Read())));
  }
  if (exit_code != 0) {
    std::string detail(text::Trim(stderr_file.Read()));
    if (detail.size() > kStderrExcerpt) detail = detail.substr(0, kStderrExcerpt) + "...";
    throw Error(ErrorCode::kConversion,
                "converter exited with status " + std::to_string(exit_code) +
                    (detail.empty() ? std::string() : ": " + detail));
  }
  if (text::Trim(output).empty()) throw Error(ErrorCode::kEmptyConversion, "empty conversion output");
  return output;
}

}  // namespace reviewkit
