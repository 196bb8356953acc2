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

#include <gtest/gtest.h>

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <json.hpp>
#include <thread>

#include "reviewkit/config.hpp"
#include "reviewkit/error.hpp"
#include "reviewkit/mock_llm.hpp"
#include "reviewkit/service.hpp"
#include "test_support.hpp"

namespace reviewkit {
namespace {

using json = nlohmann::json;

constexpr const char* kPaper = "# A Study\n\nWe study things carefully and report results.\n";

struct Frame {
  std::string kind;
  json payload;
};

std::vector<Frame> ParseSse(const std::string& body) {
  std::vector<Frame> frames;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t end = body.find("\n\n", pos);
    if (end == std::string::npos) end = body.size();
    const std::string block = body.substr(pos, end - pos);
    pos = end + 2;
    if (!block.starts_with("data: ")) continue;
    json j = json::parse(block.substr(6));
    frames.push_back({j["kind"], j});
  }
  return frames;
}

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    mock_.Start();
    config_.inference.endpoint_url = mock_.endpoint_url();
    config_.inference.model_id = "reviewer";
    config_.inference.retry_backoff_ms = 1;
    config_.results_dir = dir_ / "results";
    config_.templates_dir = dir_ / "templates";
    std::filesystem::create_directories(config_.templates_dir);
  }

  void WriteCorpus() {
    Corpus c;
    for (const auto& t : BuiltinTemplates()) c.AddTemplate(t);
    c.AddPaper(MakePaper("p1", "iclr-default", "A Study", kPaper));
    for (int i = 1; i <= 3; ++i) {
      HumanReview r;
      r.review_id = "r" + std::to_string(i);
      r.paper_id = "p1";
      r.field_contents = {{"Summary", "Reviewer " + std::to_string(i) + " summary."}};
      r.recommendation_raw = i == 3 ? 3 : 6;
      r.confidence_raw = 4;
      c.AddReview(r);
    }
    config_.corpus_path = dir_ / "corpus.jsonl";
    SaveCorpus(c, config_.corpus_path);
  }

  httplib::Client Start() {
    service_ = std::make_unique<ReviewService>(config_);
    const int port = service_->Start("127.0.0.1", 0);
    httplib::Client cli("127.0.0.1", port);
    cli.set_read_timeout(30, 0);
    return cli;
  }

  static json Body(const httplib::Result& r) { return json::parse(r->body); }

  rktest::TempDir dir_;
  MockLlmServer mock_;
  AppConfig config_;
  std::unique_ptr<ReviewService> service_;
};

TEST(HttpStatusTest, Mapping) {
  EXPECT_EQ(HttpStatusFor(ErrorCode::kInvalidArgument), 400);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kNotFound), 404);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kContextTooLong), 413);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kUnparseableVerdict), 422);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kNothingToEvaluate), 422);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kTimeout), 504);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kTransport), 502);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kCommandNotFound), 503);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kInternal), 500);
}

TEST_F(ServiceTest, HealthAndTemplates) {
  auto cli = Start();
  auto r = cli.Get("/healthz");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);

  r = cli.Get("/templates");
  ASSERT_TRUE(r);
  const json listing = Body(r);
  std::vector<std::string> ids;
  for (const auto& t : listing["templates"]) ids.push_back(t["venue_id"]);
  EXPECT_NE(std::find(ids.begin(), ids.end(), "iclr-default"), ids.end());
  EXPECT_NE(std::find(ids.begin(), ids.end(), "neurips-default"), ids.end());

  r = cli.Get("/templates/iclr-default");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(ParseTemplate(r->body).venue_id, "iclr-default");

  r = cli.Get("/templates/nope");
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(Body(r)["code"], "template_not_found");
}

TEST_F(ServiceTest, TemplatePutRoundTripsAndPersists) {
  auto cli = Start();
  auto r = cli.Put("/templates/tiny", rktest::kTinyTemplate, "text/plain");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200) << r->body;
  r = cli.Get("/templates/tiny");
  EXPECT_EQ(ParseTemplate(r->body), ParseTemplate(rktest::kTinyTemplate));
  EXPECT_TRUE(std::filesystem::exists(config_.templates_dir / "tiny.tmpl"));

  r = cli.Put("/templates/other", rktest::kTinyTemplate, "text/plain");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(Body(r)["code"], "venue_mismatch");
  r = cli.Put("/templates/tiny", "venue: tiny\nfield: Only\n  kind: text\n", "text/plain");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(Body(r)["code"], "invalid_template");

  // The edited template shapes the next generated review.
  r = cli.Post("/reviews/generate", json{{"paper_text", kPaper}, {"template_id", "tiny"}}.dump(),
               "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  const json out = Body(r);
  EXPECT_TRUE(out["parsed"]["missing_fields"].empty());
  EXPECT_TRUE(out["parsed"]["field_contents"].contains("Summary"));
  EXPECT_TRUE(out["parsed"]["field_contents"].contains("Rating"));
  EXPECT_GE(out["recommendation_raw"].get<int>(), 1);
  EXPECT_LE(out["recommendation_raw"].get<int>(), 4);

  // A fresh service sees the persisted template.
  service_->Stop();
  auto cli2 = Start();
  r = cli2.Get("/templates/tiny");
  EXPECT_EQ(r->status, 200);
}

TEST_F(ServiceTest, GenerateBlockingAndStreamingAgree) {
  auto cli = Start();
  const json req = {{"paper_text", kPaper}};
  auto r = cli.Post("/reviews/generate", req.dump(), "application/json");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200) << r->body;
  const json blocking = Body(r);
  EXPECT_TRUE(blocking["review_markdown"].get<std::string>().starts_with("# Review"));
  EXPECT_TRUE(blocking["parsed"]["missing_fields"].empty());
  EXPECT_TRUE(blocking["recommendation_raw"].is_number_integer());

  json sreq = req;
  sreq["stream"] = true;
  r = cli.Post("/reviews/generate", sreq.dump(), "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_NE(r->get_header_value("Content-Type").find("text/event-stream"), std::string::npos);
  const auto frames = ParseSse(r->body);
  ASSERT_GE(frames.size(), 2u);
  std::string text;
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    ASSERT_EQ(frames[i].kind, "delta");
    text += frames[i].payload["text"].get<std::string>();
  }
  EXPECT_EQ(frames.back().kind, "done");
  EXPECT_EQ(frames.back().payload["finish_reason"], "stop");
  EXPECT_EQ(text, blocking["review_markdown"].get<std::string>());
}

TEST_F(ServiceTest, GenerateValidation) {
  auto cli = Start();
  auto post = [&](const std::string& body) { return cli.Post("/reviews/generate", body, "application/json"); };
  auto r = post("{nope");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(Body(r)["code"], "invalid_json");
  r = post(json{{"paper_text", "   \n"}}.dump());
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(Body(r)["code"], "empty_paper");
  r = post(json{{"paper_text", kPaper}, {"template_id", "missing"}}.dump());
  EXPECT_EQ(r->status, 404);
  r = post(json{{"paper_text", kPaper}, {"paper_id", "p1"}}.dump());
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(Body(r)["code"], "no_corpus");
  EXPECT_EQ(mock_.request_count(), 0u);
}

TEST_F(ServiceTest, ContextBudgetIsRejectedBeforeInference) {
  config_.context_tokens = 64;
  auto cli = Start();
  auto r = cli.Post("/reviews/generate", json{{"paper_text", kPaper}}.dump(), "application/json");
  EXPECT_EQ(r->status, 413);
  EXPECT_EQ(Body(r)["code"], "context_too_long");
  r = cli.Post("/reviews/generate", json{{"paper_text", kPaper}, {"stream", true}}.dump(),
               "application/json");
  EXPECT_EQ(r->status, 413);
  EXPECT_EQ(mock_.request_count(), 0u);
}

TEST_F(ServiceTest, UpstreamFailuresMapToGatewayErrors) {
  mock_.set_handler([](const MockRequest&) {
    MockReply r;
    r.status = 500;
    return r;
  });
  config_.inference.max_retries = 0;
  auto cli = Start();
  auto r = cli.Post("/reviews/generate", json{{"paper_text", kPaper}}.dump(), "application/json");
  EXPECT_EQ(r->status, 502);
  EXPECT_EQ(Body(r)["code"], "http_error");

  mock_.set_handler([](const MockRequest&) {
    MockReply r;
    r.chunks = {"# Review\n\n", "partial"};
    r.disconnect_after = 1;
    return r;
  });
  r = cli.Post("/reviews/generate", json{{"paper_text", kPaper}, {"stream", true}}.dump(),
               "application/json");
  ASSERT_TRUE(r);
  const auto frames = ParseSse(r->body);
  ASSERT_FALSE(frames.empty());
  EXPECT_EQ(frames.front().kind, "delta");
  EXPECT_EQ(frames.back().kind, "error");
  EXPECT_EQ(frames.back().payload["code"], "stream_error");
}

TEST_F(ServiceTest, GenerateForCorpusPaperThenEvaluate) {
  WriteCorpus();
  auto cli = Start();
  auto r = cli.Post("/reviews/generate",
                    json{{"paper_text", kPaper}, {"paper_id", "p1"}, {"template_id", "neurips-default"}}.dump(),
                    "application/json");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(Body(r)["code"], "template_mismatch");
  r = cli.Post("/reviews/generate", json{{"paper_text", kPaper}, {"paper_id", "ghost"}}.dump(),
               "application/json");
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(Body(r)["code"], "paper_not_found");

  r = cli.Post("/eval/run", json{{"model_id", "reviewer"}}.dump(), "application/json");
  EXPECT_EQ(r->status, 422);
  EXPECT_EQ(Body(r)["code"], "nothing_to_evaluate");

  r = cli.Post("/reviews/generate", json{{"paper_text", kPaper}, {"paper_id", "p1"}}.dump(),
               "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  const Corpus stored = LoadCorpus(config_.corpus_path);
  ASSERT_NE(stored.GeneratedBy("p1", "reviewer"), nullptr);

  r = cli.Post("/eval/run", json{{"model_id", "reviewer"}}.dump(), "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  const std::string id = Body(r)["report_id"];
  r = cli.Get("/eval/report/" + id);
  ASSERT_EQ(r->status, 200);
  EXPECT_NE(r->body.find("| reviewer | "), std::string::npos) << r->body;
  EXPECT_NE(r->body.find("Human Reviewers"), std::string::npos);

  EXPECT_EQ(cli.Get("/eval/report/nothing-here")->status, 404);
  EXPECT_EQ(cli.Get("/eval/report/..")->status, 404);
}

TEST_F(ServiceTest, ConvertUsesConfiguredCommand) {
  config_.converter_command = "cat {input}";
  auto cli = Start();
  httplib::MultipartFormDataItems items = {{"pdf", "# Converted\n\nbody text\n", "paper.pdf", "application/pdf"}};
  auto r = cli.Post("/papers/convert", items);
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(Body(r)["markdown"], "# Converted\n\nbody text\n");

  httplib::MultipartFormDataItems wrong = {{"file", "x", "x.pdf", "application/pdf"}};
  r = cli.Post("/papers/convert", wrong);
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(Body(r)["code"], "missing_pdf");

  httplib::MultipartFormDataItems blank = {{"pdf", "  \n", "x.pdf", "application/pdf"}};
  r = cli.Post("/papers/convert", blank);
  EXPECT_EQ(r->status, 422);
}

TEST_F(ServiceTest, ConverterMissingIsServiceUnavailable) {
  config_.converter_command = "rk-no-such-converter {input}";
  auto cli = Start();
  httplib::MultipartFormDataItems items = {{"pdf", "%PDF", "paper.pdf", "application/pdf"}};
  auto r = cli.Post("/papers/convert", items);
  EXPECT_EQ(r->status, 503);
  EXPECT_EQ(Body(r)["code"], "command_not_found");
}

TEST_F(ServiceTest, ConcurrentGenerations) {
  auto cli = Start();
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", service_->port());
      c.set_read_timeout(30, 0);
      const json body = {{"paper_text", std::string(kPaper) + "Variant " + std::to_string(i)},
                         {"stream", i % 2 == 0}};
      auto r = c.Post("/reviews/generate", body.dump(), "application/json");
      if (r && r->status == 200) ++ok;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 6);
  EXPECT_EQ(mock_.request_count(), 6u);
}

TEST(ConfigTest, ParseSetAndValidate) {
  AppConfig c = ParseConfig(R"({"inference":{"endpoint_url":"http://h:1/v1","model_id":"m"},
                                 "max_concurrency":2,"curation":{"confidence_thresholds":{"iclr":3}}})");
  EXPECT_EQ(c.inference.model_id, "m");
  EXPECT_EQ(c.max_concurrency, 2u);
  EXPECT_EQ(c.curation.confidence_threshold_by_venue.at("iclr"), 3);
  EXPECT_THROW(ParseConfig(R"({"bogus":1})"), Error);
  EXPECT_THROW(ParseConfig("[1]"), Error);
  SetConfigValue(c, "judge.temperature", "0.5");
  EXPECT_EQ(c.judge.temperature, 0.5);
  EXPECT_THROW(SetConfigValue(c, "max_concurrency", "zero"), Error);
  SetConfigValue(c, "converter_command", "pdftotext");
  EXPECT_THROW(c.Validate(), Error);
  SetConfigValue(c, "converter_command", "pdftotext {input} -");
  const AppConfig again = ParseConfig(ConfigToJson(c));
  EXPECT_EQ(again.judge.temperature, 0.5);
  EXPECT_FALSE(ParseConfig(R"({"curation":{"strip_appendices":false}})").curation.strip_appendices);
  EXPECT_THROW(ParseConfig(R"({"max_concurrency":true})"), Error);
  EXPECT_EQ(SplitListenAddress("0.0.0.0:9000"), std::make_pair(std::string("0.0.0.0"), 9000));
  EXPECT_THROW(SplitListenAddress("nohost"), Error);
  EXPECT_THROW(SplitListenAddress("h:70000"), Error);
}

}  // namespace
}  // namespace reviewkit
