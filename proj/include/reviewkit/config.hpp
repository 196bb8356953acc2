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

#ifndef REVIEWKIT_CONFIG_HPP_
#define REVIEWKIT_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "reviewkit/corpus.hpp"
#include "reviewkit/inference_client.hpp"
#include "reviewkit/prompting.hpp"

namespace reviewkit {

struct AppConfig {
  GenerationConfig inference;
  GenerationConfig judge;
  // Shell command; `{input}` is replaced by the quoted PDF path and standard
  // output is taken as markdown.
  std::string converter_command = "pdftotext -layout {input} -";
  std::filesystem::path templates_dir;
  std::filesystem::path corpus_path;
  std::filesystem::path results_dir = "results";
  std::string listen_address = "127.0.0.1:8080";
  std::size_t max_concurrency = 4;
  std::size_t context_tokens = kDefaultContextTokens;
  CurationOptions curation;

  AppConfig();
  void Validate() const;
};

// JSON config file; unknown keys are rejected. Missing keys keep defaults.
AppConfig ParseConfig(std::string_view json_text);
AppConfig LoadConfig(const std::filesystem::path& path);
std::string ConfigToJson(const AppConfig& config);

// Sets one dotted key (e.g. "inference.endpoint_url", "max_concurrency",
// "curation.confidence_thresholds.iclr-default") from its string form.
void SetConfigValue(AppConfig& config, std::string_view key, std::string_view value);

// "host:port" -> parts. Port 0 selects an ephemeral port.
std::pair<std::string, int> SplitListenAddress(std::string_view address);

}  // namespace reviewkit

#endif  // REVIEWKIT_CONFIG_HPP_
