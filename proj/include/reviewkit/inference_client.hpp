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

#ifndef REVIEWKIT_INFERENCE_CLIENT_HPP_
#define REVIEWKIT_INFERENCE_CLIENT_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "reviewkit/error.hpp"
#include "reviewkit/prompting.hpp"

namespace reviewkit {

struct GenerationConfig {
  std::string endpoint_url;  // e.g. http://localhost:8000/v1
  std::string model_id;
  double temperature = 0.0;
  int max_output_tokens = 4096;
  double request_timeout_seconds = 600.0;
  int max_retries = 2;
  int retry_backoff_ms = 250;
  // Name of the environment variable holding the bearer token. The token
  // itself is never stored.
  std::string api_key_env;

  void Validate() const;
};

enum class StreamEventKind { kDelta, kDone, kError };

struct StreamEvent {
  StreamEventKind kind = StreamEventKind::kDelta;
  std::string text;           // delta: token text; error: message
  std::string finish_reason;  // done only
  ErrorCode error_code = ErrorCode::kStream;  // error only
};

using StreamConsumer = std::function<void(const StreamEvent&)>;

struct StreamResult {
  std::string text;  // concatenation of every delta
  StreamEvent terminal;
  bool ok() const { return terminal.kind == StreamEventKind::kDone; }
};

// Client for an OpenAI-style chat-completions endpoint. Thread-safe; at most
// `max_concurrency` requests are in flight across all threads.
class InferenceClient {
 public:
  explicit InferenceClient(GenerationConfig config, std::size_t max_concurrency = 4);
  ~InferenceClient();
  InferenceClient(InferenceClient&&) noexcept;
  InferenceClient& operator=(InferenceClient&&) noexcept;

  // Blocking completion. Transport failures, 408, 429 and 5xx are retried up
  // to max_retries times; other statuses throw immediately (401/403 as
  // kAuth). An empty completion throws kEmptyCompletion.
  std::string Complete(const PromptBundle& bundle) const;

  // Streams deltas to `on_event`, ending with exactly one kDone or kError
  // event. Never throws for upstream failures; inspect the result instead.
  StreamResult Stream(const PromptBundle& bundle, const StreamConsumer& on_event) const;

  // JSON request body with keys model, messages, temperature, max_tokens,
  // stream (in that order).
  std::string RequestBody(const PromptBundle& bundle, bool stream) const;

  const GenerationConfig& config() const { return config_; }

 private:
  struct Slots;
  GenerationConfig config_;
  std::unique_ptr<Slots> slots_;
};

}  // namespace reviewkit

#endif  // REVIEWKIT_INFERENCE_CLIENT_HPP_
