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

#include "reviewkit/config.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "reviewkit/error.hpp"

namespace reviewkit {
namespace {

using json = nlohmann::json;

[[noreturn]] void BadKey(std::string_view key) {
  throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + std::string(key) + "'");
}

template <typename T>
T Number(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kInvalidArgument,
                "config key '" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  }
  return out;
}

void SetGeneration(GenerationConfig& g, std::string_view full_key, std::string_view field,
                   std::string_view value) {
  if (field == "endpoint_url") {
    g.endpoint_url = value;
  } else if (field == "model_id") {
    g.model_id = value;
  } else if (field == "temperature") {
    g.temperature = Number<double>(full_key, value);
  } else if (field == "max_output_tokens") {
    g.max_output_tokens = Number<int>(full_key, value);
  } else if (field == "request_timeout") {
    g.request_timeout_seconds = Number<double>(full_key, value);
  } else if (field == "max_retries") {
    g.max_retries = Number<int>(full_key, value);
  } else if (field == "retry_backoff_ms") {
    g.retry_backoff_ms = Number<int>(full_key, value);
  } else if (field == "api_key_env") {
    g.api_key_env = value;
  } else {
    BadKey(full_key);
  }
}

std::string ScalarString(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream out;
    out.precision(17);
    out << v.get<double>();
    return out.str();
  }
  throw Error(ErrorCode::kInvalidArgument, "config values must be strings, numbers or booleans");
}

void ApplyJson(AppConfig& config, const json& node, const std::string& prefix) {
  for (const auto& [key, value] : node.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      ApplyJson(config, value, full);
    } else {
      SetConfigValue(config, full, ScalarString(value));
    }
  }
}

json GenerationJson(const GenerationConfig& g) {
  return {{"endpoint_url", g.endpoint_url},
          {"model_id", g.model_id},
          {"temperature", g.temperature},
          {"max_output_tokens", g.max_output_tokens},
          {"request_timeout", g.request_timeout_seconds},
          {"max_retries", g.max_retries},
          {"retry_backoff_ms", g.retry_backoff_ms},
          {"api_key_env", g.api_key_env}};
}

}  // namespace

AppConfig::AppConfig() {
  inference.endpoint_url = "http://127.0.0.1:8000/v1";
  inference.model_id = "reviewer";
  judge.endpoint_url = "https://api.openai.com/v1";
  judge.model_id = "gpt-4o-2024-11-20";
  judge.api_key_env = "OPENAI_API_KEY";
}

void AppConfig::Validate() const {
  inference.Validate();
  judge.Validate();
  if (max_concurrency < 1) throw Error(ErrorCode::kInvalidArgument, "max_concurrency must be >= 1");
  if (converter_command.find("{input}") == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "converter_command must contain {input}");
  }
  if (!(curation.length_quantile >= 0.0 && curation.length_quantile < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "curation.length_quantile must satisfy 0 <= q < 0.5");
  }
  SplitListenAddress(listen_address);
}

void SetConfigValue(AppConfig& config, std::string_view key, std::string_view value) {
  if (key.starts_with("inference.")) {
    SetGeneration(config.inference, key, key.substr(10), value);
  } else if (key.starts_with("judge.")) {
    SetGeneration(config.judge, key, key.substr(6), value);
  } else if (key == "converter_command") {
    config.converter_command = value;
  } else if (key == "templates_dir") {
    config.templates_dir = std::string(value);
  } else if (key == "corpus_path") {
    config.corpus_path = std::string(value);
  } else if (key == "results_dir") {
    config.results_dir = std::string(value);
  } else if (key == "listen_address") {
    config.listen_address = value;
  } else if (key == "max_concurrency") {
    config.max_concurrency = Number<std::size_t>(key, value);
  } else if (key == "context_tokens") {
    config.context_tokens = Number<std::size_t>(key, value);
  } else if (key == "curation.length_quantile") {
    config.curation.length_quantile = Number<double>(key, value);
  } else if (key == "curation.default_confidence_threshold") {
    config.curation.default_confidence_threshold = Number<int>(key, value);
  } else if (key == "curation.strip_appendices") {
    if (value != "true" && value != "false") BadKey(key);
    config.curation.strip_appendices = value == "true";
  } else if (key.starts_with("curation.confidence_thresholds.")) {
    const std::string venue(key.substr(31));
    if (venue.empty()) BadKey(key);
    config.curation.confidence_threshold_by_venue[venue] = Number<int>(key, value);
  } else {
    BadKey(key);
  }
}

AppConfig ParseConfig(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::kParse, "config must be a JSON object");
  AppConfig config;
  ApplyJson(config, root, "");
  config.Validate();
  return config;
}

AppConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string ConfigToJson(const AppConfig& config) {
  json thresholds = json::object();
  for (const auto& [venue, t] : config.curation.confidence_threshold_by_venue) thresholds[venue] = t;
  json root = {
      {"inference", GenerationJson(config.inference)},
      {"judge", GenerationJson(config.judge)},
      {"converter_command", config.converter_command},
      {"templates_dir", config.templates_dir.string()},
      {"corpus_path", config.corpus_path.string()},
      {"results_dir", config.results_dir.string()},
      {"listen_address", config.listen_address},
      {"max_concurrency", config.max_concurrency},
      {"context_tokens", config.context_tokens},
      {"curation",
       {{"length_quantile", config.curation.length_quantile},
        {"default_confidence_threshold", config.curation.default_confidence_threshold},
        {"strip_appendices", config.curation.strip_appendices},
        {"confidence_thresholds", thresholds}}}};
  return root.dump(2);
}

std::pair<std::string, int> SplitListenAddress(std::string_view address) {
  const std::size_t colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorCode::kInvalidArgument, "listen_address must be host:port");
  }
  const int port = Number<int>("listen_address", address.substr(colon + 1));
  if (port < 0 || port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
  return {std::string(address.substr(0, colon)), port};
}

}  // namespace reviewkit
