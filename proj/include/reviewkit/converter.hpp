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

#ifndef REVIEWKIT_CONVERTER_HPP_
#define REVIEWKIT_CONVERTER_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace reviewkit {

// Runs `command_template` through /bin/sh with `{input}` replaced by the
// shell-quoted path and returns standard output. Exit status 127 throws
// kCommandNotFound, any other failure kConversion (with a stderr excerpt),
// blank output kEmptyConversion.
std::string ConvertPdf(std::string_view command_template, const std::filesystem::path& pdf_path);

std::string ShellQuote(std::string_view text);

}  // namespace reviewkit

#endif  // REVIEWKIT_CONVERTER_HPP_
