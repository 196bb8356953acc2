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

#ifndef REVIEWKIT_MOCK_LLM_HPP_
#define REVIEWKIT_MOCK_LLM_HPP_

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace reviewkit {

// In-process stand-in for an OpenAI-style chat-completions server, used by
// tests and local smoke runs.

struct MockRequest {
  std::string path;
  std::string body;
  std::string authorization;
  std::string model;
  std::string system;
  std::string user;
  bool stream = false;
};

struct MockReply {
  int status = 200;
  std::string content;
  std::string error_body;  // sent instead of a completion when status is not 2xx
  // Stream deltas; empty means content split on word boundaries.
  std::vector<std::string> chunks;
  // Close the stream after this many deltas, without a terminal frame.
  std::size_t disconnect_after = std::numeric_limits<std::size_t>::max();
  std::string raw_sse;  // if set, written verbatim as the stream body
  std::string finish_reason = "stop";
  int chunk_delay_ms = 0;
};

using MockHandler = std::function<MockReply(const MockRequest&)>;

// Reviewer prompts get a review with one section per "## Name" heading in the
// system prompt, ratings drawn from its "Allowed values:" lines. Judge prompts
// get a verdict chosen by hashing the user prompt.
MockReply DefaultMockReply(const MockRequest& request);
std::string MockReviewFor(const std::string& system_prompt, const std::string& user_prompt);
std::string MockVerdictFor(const std::string& user_prompt);

// Word-boundary chunks whose concatenation is `text`.
std::vector<std::string> SplitIntoChunks(const std::string& text);

class MockLlmServer {
 public:
  explicit MockLlmServer(MockHandler handler = DefaultMockReply);
  ~MockLlmServer();
  MockLlmServer(const MockLlmServer&) = delete;
  MockLlmServer& operator=(const MockLlmServer&) = delete;

  // Returns the bound port.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  void Stop();
  void Wait();

  void set_handler(MockHandler handler);
  int port() const;
  std::string endpoint_url() const;  // http://host:port/v1
  std::vector<MockRequest> requests() const;
  std::size_t request_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace reviewkit

#endif  // REVIEWKIT_MOCK_LLM_HPP_
