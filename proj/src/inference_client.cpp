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

#include "reviewkit/inference_client.hpp"

#include <chrono>
#include <cstdlib>
#include <json.hpp>
#include <optional>
#include <semaphore>
#include <thread>

#include "http_util.hpp"
#include "reviewkit/error.hpp"

namespace reviewkit {
namespace {

using ojson = nlohmann::ordered_json;

constexpr std::size_t kBodyExcerpt = 300;

struct Attempt {
  bool retryable = false;
  std::optional<Error> error;
};

bool RetryableStatus(int status) { return status == 408 || status == 429 || status >= 500; }

Error StatusError(int status, const std::string& body) {
  std::string msg = "inference endpoint returned HTTP " + std::to_string(status);
  if (!body.empty()) msg += ": " + body.substr(0, kBodyExcerpt);
  if (status == 401 || status == 403) return Error(ErrorCode::kAuth, msg, status);
  return Error(ErrorCode::kHttp, msg, status);
}

Error TransportError(httplib::Error err) {
  const std::string msg = "inference request failed: " + httplib::to_string(err);
  if (err == httplib::Error::ConnectionTimeout) return Error(ErrorCode::kTimeout, msg);
  return Error(ErrorCode::kTransport, msg);
}

httplib::Headers AuthHeaders(const GenerationConfig& config) {
  httplib::Headers headers;
  if (!config.api_key_env.empty()) {
    if (const char* token = std::getenv(config.api_key_env.c_str()); token != nullptr && *token) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }
  return headers;
}

void Backoff(const GenerationConfig& config, int attempt) {
  if (config.retry_backoff_ms <= 0) return;
  std::this_thread::sleep_for(std::chrono::milliseconds(config.retry_backoff_ms << std::min(attempt, 6)));
}

// Incremental server-sent-events decoder. Feed raw bytes; complete events
// are handed to `on_data` with their joined data lines.
class SseDecoder {
 public:
  template <typename Fn>
  bool Feed(const char* data, std::size_t n, Fn&& on_data) {
    buffer_.append(data, n);
    std::size_t start = 0;
    while (true) {
      const std::size_t nl = buffer_.find('\n', start);
      if (nl == std::string::npos) break;
      std::string_view line(buffer_.data() + start, nl - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      start = nl + 1;
      if (line.empty()) {
        if (has_data_) {
          has_data_ = false;
          std::string payload = std::move(data_);
          data_.clear();
          if (!on_data(payload)) {
            buffer_.erase(0, start);
            return false;
          }
        }
        continue;
      }
      if (line.starts_with(':')) continue;  // comment / keep-alive
      if (line.starts_with("data:")) {
        std::string_view value = line.substr(5);
        if (value.starts_with(' ')) value.remove_prefix(1);
        if (has_data_) data_ += '\n';
        data_.append(value);
        has_data_ = true;
      }
    }
    buffer_.erase(0, start);
    return true;
  }

 private:
  std::string buffer_;
  std::string data_;
  bool has_data_ = false;
};

}  // namespace

struct InferenceClient::Slots {
  explicit Slots(std::size_t n) : sem(static_cast<std::ptrdiff_t>(n)) {}
  std::counting_semaphore<4096> sem;
};

namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<4096>& sem) : sem_(sem) { sem_.acquire(); }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<4096>& sem_;
};

}  // namespace

void GenerationConfig::Validate() const {
  if (endpoint_url.empty()) throw Error(ErrorCode::kInvalidArgument, "endpoint_url is empty");
  if (model_id.empty()) throw Error(ErrorCode::kInvalidArgument, "model_id is empty");
  if (!(temperature >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "temperature must be >= 0");
  if (max_output_tokens < 1) throw Error(ErrorCode::kInvalidArgument, "max_output_tokens must be >= 1");
  if (max_retries < 0) throw Error(ErrorCode::kInvalidArgument, "max_retries must be >= 0");
  if (!(request_timeout_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "request_timeout must be > 0");
  }
}

InferenceClient::InferenceClient(GenerationConfig config, std::size_t max_concurrency)
    : config_(std::move(config)) {
  config_.Validate();
  detail::SplitEndpoint(config_.endpoint_url);
  if (max_concurrency < 1 || max_concurrency > 4096) {
    throw Error(ErrorCode::kInvalidArgument, "max_concurrency must be in [1, 4096]");
  }
  slots_ = std::make_unique<Slots>(max_concurrency);
}

InferenceClient::~InferenceClient() = default;
InferenceClient::InferenceClient(InferenceClient&&) noexcept = default;
InferenceClient& InferenceClient::operator=(InferenceClient&&) noexcept = default;

std::string InferenceClient::RequestBody(const PromptBundle& bundle, bool stream) const {
  ojson messages = ojson::array();
  for (const ChatMessage& m : bundle.messages) {
    ojson jm;
    jm["role"] = RoleName(m.role);
    jm["content"] = m.content;
    messages.push_back(std::move(jm));
  }
  ojson body;
  body["model"] = config_.model_id;
  body["messages"] = std::move(messages);
  body["temperature"] = config_.temperature;
  body["max_tokens"] = config_.max_output_tokens;
  body["stream"] = stream;
  return body.dump();
}

std::string InferenceClient::Complete(const PromptBundle& bundle) const {
  const detail::Endpoint ep = detail::SplitEndpoint(config_.endpoint_url);
  const std::string path = ep.base_path + "/chat/completions";
  const std::string body = RequestBody(bundle, false);
  const httplib::Headers headers = AuthHeaders(config_);

  SlotGuard slot(slots_->sem);
  for (int attempt = 0;; ++attempt) {
    auto client = detail::MakeClient(ep, config_.request_timeout_seconds);
    httplib::Result res = client->Post(path, headers, body, "application/json");
    Attempt outcome;
    if (!res) {
      outcome.error = TransportError(res.error());
      outcome.retryable = true;
    } else if (res->status < 200 || res->status >= 300) {
      outcome.error = StatusError(res->status, res->body);
      outcome.retryable = RetryableStatus(res->status);
    } else {
      std::string content;
      try {
        const ojson j = ojson::parse(res->body);
        const ojson& c = j.at("choices").at(0).at("message").at("content");
        if (c.is_string()) content = c.get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParse, std::string("malformed completion response: ") + e.what());
      }
      if (content.empty()) throw Error(ErrorCode::kEmptyCompletion, "empty completion");
      return content;
    }
    if (!outcome.retryable || attempt >= config_.max_retries) throw *outcome.error;
    Backoff(config_, attempt);
  }
}

StreamResult InferenceClient::Stream(const PromptBundle& bundle,
                                     const StreamConsumer& on_event) const {
  StreamResult result;
  auto finish = [&](StreamEventKind kind, std::string text, std::string finish_reason,
                    ErrorCode code = ErrorCode::kStream) {
    result.terminal = StreamEvent{kind, std::move(text), std::move(finish_reason), code};
    if (on_event) on_event(result.terminal);
    return result;
  };

  detail::Endpoint ep;
  try {
    ep = detail::SplitEndpoint(config_.endpoint_url);
  } catch (const Error& e) {
    return finish(StreamEventKind::kError, e.what(), "", e.code());
  }
  const std::string body = RequestBody(bundle, true);
  const httplib::Headers auth = AuthHeaders(config_);

  SlotGuard slot(slots_->sem);
  bool delivered_delta = false;
  for (int attempt = 0;; ++attempt) {
    auto client = detail::MakeClient(ep, config_.request_timeout_seconds);
    httplib::Request req;
    req.method = "POST";
    req.path = ep.base_path + "/chat/completions";
    req.headers = auth;
    req.headers.emplace("Accept", "text/event-stream");
    req.headers.emplace("Content-Type", "application/json");
    req.body = body;

    int status = 0;
    std::string error_body;
    std::string finish_reason;
    std::optional<StreamEvent> terminal;
    SseDecoder decoder;

    req.response_handler = [&status](const httplib::Response& r) {
      status = r.status;
      return true;
    };
    req.content_receiver = [&](const char* data, std::size_t n, uint64_t, uint64_t) {
      if (status < 200 || status >= 300) {
        if (error_body.size() < kBodyExcerpt) error_body.append(data, n);
        return true;
      }
      if (terminal) return true;
      return decoder.Feed(data, n, [&](const std::string& payload) {
        if (terminal) return true;
        if (payload == "[DONE]") {
          terminal = StreamEvent{StreamEventKind::kDone, "", finish_reason.empty() ? "stop" : finish_reason,
                                 ErrorCode::kStream};
          return true;
        }
        try {
          const ojson frame = ojson::parse(payload);
          if (auto err = frame.find("error"); err != frame.end()) {
            std::string msg = err->is_object() ? err->value("message", err->dump()) : err->dump();
            terminal = StreamEvent{StreamEventKind::kError, "upstream error: " + msg, "", ErrorCode::kStream};
            return false;
          }
          const ojson& choice = frame.at("choices").at(0);
          if (auto delta = choice.find("delta"); delta != choice.end()) {
            if (auto content = delta->find("content");
                content != delta->end() && content->is_string()) {
              std::string text = content->get<std::string>();
              if (!text.empty()) {
                result.text += text;
                delivered_delta = true;
                if (on_event) on_event(StreamEvent{StreamEventKind::kDelta, std::move(text), "", ErrorCode::kStream});
              }
            }
          }
          if (auto fr = choice.find("finish_reason"); fr != choice.end() && fr->is_string()) {
            finish_reason = fr->get<std::string>();
          }
        } catch (const nlohmann::json::exception&) {
          terminal = StreamEvent{StreamEventKind::kError,
                                 "malformed stream frame: " + payload.substr(0, 120), "",
                                 ErrorCode::kStream};
          return false;
        }
        return true;
      });
    };

    httplib::Response res;
    httplib::Error err = httplib::Error::Success;
    const bool sent = client->send(req, res, err);

    if (terminal && terminal->kind == StreamEventKind::kDone && result.text.empty()) {
      return finish(StreamEventKind::kError, "empty completion", "", ErrorCode::kEmptyCompletion);
    }
    if (terminal) {
      return finish(terminal->kind, terminal->text, terminal->finish_reason, terminal->error_code);
    }

    Attempt outcome;
    if (status != 0 && (status < 200 || status >= 300)) {
      outcome.error = StatusError(status, error_body);
      outcome.retryable = RetryableStatus(status);
    } else if (!sent) {
      outcome.error = TransportError(err);
      outcome.retryable = true;
    } else if (!finish_reason.empty()) {
      if (result.text.empty()) {
        return finish(StreamEventKind::kError, "empty completion", "", ErrorCode::kEmptyCompletion);
      }
      return finish(StreamEventKind::kDone, "", finish_reason);
    } else {
      return finish(StreamEventKind::kError, "stream ended before [DONE]", "");
    }
    if (delivered_delta) {
      return finish(StreamEventKind::kError,
                    std::string("stream disconnected: ") + outcome.error->what(), "");
    }
    if (!outcome.retryable || attempt >= config_.max_retries) {
      return finish(StreamEventKind::kError, outcome.error->what(), "", outcome.error->code());
    }
    Backoff(config_, attempt);
  }
}

}  // namespace reviewkit
