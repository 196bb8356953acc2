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

#include "reviewkit/mock_llm.hpp"

#include <httplib.h>

#include <chrono>
#include <mutex>
#include <json.hpp>
#include <thread>

#include "reviewkit/error.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

using json = nlohmann::json;

std::uint64_t Fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct MockField {
  std::string name;
  std::vector<std::string> allowed;  // "6: marginally above the acceptance threshold"
};

std::vector<MockField> FieldsFromPrompt(const std::string& system_prompt) {
  std::vector<MockField> fields;
  bool in_format = false;
  for (const auto& line : text::SplitLines(system_prompt)) {
    std::string_view t = line.text;
    if (t == "# Review") {
      in_format = true;
      continue;
    }
    if (!in_format) continue;
    if (t.starts_with("## ")) {
      fields.push_back({std::string(text::Trim(t.substr(3))), {}});
    } else if (t.starts_with("# ")) {
      break;
    } else if (!fields.empty() && t.starts_with("Allowed values:")) {
      std::string_view rest = t.substr(15);
      while (!rest.empty()) {
        const std::size_t semi = rest.find(';');
        std::string_view item = text::Trim(rest.substr(0, semi));
        if (!item.empty()) fields.back().allowed.emplace_back(item);
        if (semi == std::string_view::npos) break;
        rest = rest.substr(semi + 1);
      }
    }
  }
  return fields;
}

std::string Frame(const json& payload) { return "data: " + payload.dump() + "\n\n"; }

json ChunkPayload(const std::string& delta, const std::string& finish_reason) {
  json choice = {{"index", 0}, {"delta", json::object()}, {"finish_reason", nullptr}};
  if (!delta.empty()) choice["delta"]["content"] = delta;
  if (!finish_reason.empty()) choice["finish_reason"] = finish_reason;
  return {{"id", "mock"}, {"object", "chat.completion.chunk"}, {"choices", json::array({choice})}};
}

}  // namespace

std::vector<std::string> SplitIntoChunks(const std::string& text) {
  std::vector<std::string> chunks;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find_first_of(" \n", start);
    end = end == std::string::npos ? text.size() : end + 1;
    chunks.push_back(text.substr(start, end - start));
    start = end;
  }
  return chunks;
}

std::string MockReviewFor(const std::string& system_prompt, const std::string& user_prompt) {
  const auto fields = FieldsFromPrompt(system_prompt);
  const std::size_t words = text::CountWords(user_prompt);
  std::string out = "# Review";
  for (const auto& field : fields) {
    out += "\n\n## " + field.name + "\n";
    if (field.allowed.empty()) {
      out += "Mock " + text::ToLower(field.name) + " for a submission of " + std::to_string(words) +
             " words.";
    } else {
      const std::uint64_t pick = Fnv1a(field.name + "\x1f" + user_prompt) % field.allowed.size();
      out += field.allowed[pick];
    }
  }
  return out + "\n";
}

std::string MockVerdictFor(const std::string& user_prompt) {
  static constexpr const char* kOutcomes[] = {"**Review A**", "**Review B**", "**Tie**"};
  const char* outcome = kOutcomes[Fnv1a(user_prompt) % 3];
  return std::string(
             "### Analysis\n\n"
             "**Expert Reviews' Key Points**: the experts agree on the main strengths and "
             "raise concerns about the evaluation.\n\n"
             "**Review A**: covers the main contribution and some of the concerns.\n\n"
             "**Review B**: covers the main contribution and a different subset of the "
             "concerns.\n\n"
             "### Decision\n\n"
             "**Final Decision**: ") +
         outcome + "\n";
}

MockReply DefaultMockReply(const MockRequest& request) {
  MockReply reply;
  if (request.system.find("meta-reviewer") != std::string::npos) {
    reply.content = MockVerdictFor(request.user);
  } else if (request.system.find("# Review") != std::string::npos) {
    reply.content = MockReviewFor(request.system, request.user);
  } else {
    reply.content = "mock completion";
  }
  return reply;
}

struct MockLlmServer::Impl {
  httplib::Server server;
  std::thread thread;
  std::mutex join_mu;
  mutable std::mutex mu;
  MockHandler handler;
  std::vector<MockRequest> requests;
  std::string host;
  int port = 0;

  MockReply Dispatch(const MockRequest& request) {
    MockHandler h;
    {
      std::lock_guard lock(mu);
      requests.push_back(request);
      h = handler;
    }
    return h(request);
  }
};

MockLlmServer::MockLlmServer(MockHandler handler) : impl_(std::make_unique<Impl>()) {
  impl_->handler = std::move(handler);
  impl_->server.Post(R"((.*)/chat/completions)", [this](const httplib::Request& req,
                                                          httplib::Response& res) {
    MockRequest request;
    request.path = req.path;
    request.body = req.body;
    request.authorization = req.get_header_value("Authorization");
    try {
      const json body = json::parse(req.body);
      request.model = body.value("model", "");
      request.stream = body.value("stream", false);
      for (const auto& m : body.at("messages")) {
        const std::string role = m.value("role", "");
        if (role == "system") request.system += m.value("content", "");
        if (role == "user") request.user += m.value("content", "");
      }
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", {{"message", e.what()}}}}.dump(), "application/json");
      return;
    }
    const MockReply reply = impl_->Dispatch(request);
    if (reply.status < 200 || reply.status >= 300) {
      res.status = reply.status;
      res.set_content(reply.error_body.empty()
                          ? json{{"error", {{"message", "mock failure"}}}}.dump()
                          : reply.error_body,
                      "application/json");
      return;
    }
    if (!request.stream) {
      json choice = {{"index", 0},
                     {"message", {{"role", "assistant"}, {"content", reply.content}}},
                     {"finish_reason", reply.finish_reason}};
      json body = {{"id", "mock"},
                   {"object", "chat.completion"},
                   {"model", request.model},
                   {"choices", json::array({choice})}};
      res.set_content(body.dump(), "application/json");
      return;
    }
    auto chunks = reply.chunks.empty() ? SplitIntoChunks(reply.content) : reply.chunks;
    res.set_chunked_content_provider(
        "text/event-stream",
        [reply, chunks = std::move(chunks)](std::size_t, httplib::DataSink& sink) {
          if (!reply.raw_sse.empty()) {
            sink.write(reply.raw_sse.data(), reply.raw_sse.size());
            sink.done();
            return true;
          }
          for (std::size_t i = 0; i < chunks.size(); ++i) {
            if (i == reply.disconnect_after) return false;
            if (reply.chunk_delay_ms > 0) {
              std::this_thread::sleep_for(std::chrono::milliseconds(reply.chunk_delay_ms));
            }
            const std::string frame = Frame(ChunkPayload(chunks[i], ""));
            if (!sink.write(frame.data(), frame.size())) return false;
          }
          if (chunks.size() == reply.disconnect_after) return false;
          const std::string tail = Frame(ChunkPayload("", reply.finish_reason)) + "data: [DONE]\n\n";
          sink.write(tail.data(), tail.size());
          sink.done();
          return true;
        });
  });
}

MockLlmServer::~MockLlmServer() { Stop(); }

int MockLlmServer::Start(const std::string& host, int port) {
  impl_->host = host;
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (impl_->port <= 0) {
    throw Error(ErrorCode::kIo, "cannot bind mock server to " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void MockLlmServer::Stop() {
  impl_->server.stop();
  Wait();
}

void MockLlmServer::Wait() {
  std::lock_guard lock(impl_->join_mu);
  if (impl_->thread.joinable()) impl_->thread.join();
}

void MockLlmServer::set_handler(MockHandler handler) {
  std::lock_guard lock(impl_->mu);
  impl_->handler = std::move(handler);
}

int MockLlmServer::port() const { return impl_->port; }

std::string MockLlmServer::endpoint_url() const {
  return "http://" + impl_->host + ":" + std::to_string(impl_->port) + "/v1";
}

std::vector<MockRequest> MockLlmServer::requests() const {
  std::lock_guard lock(impl_->mu);
  return impl_->requests;
}

std::size_t MockLlmServer::request_count() const {
  std::lock_guard lock(impl_->mu);
  return impl_->requests.size();
}

}  // namespace reviewkit
