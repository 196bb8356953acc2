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

#include "reviewkit/service.hpp"

#include <httplib.h>
#include <unistd.h>

#include <fstream>
#include <json.hpp>
#include <thread>

#include "reviewkit/converter.hpp"
#include "reviewkit/error.hpp"
#include "reviewkit/pipeline.hpp"

namespace reviewkit {
namespace {

using json = nlohmann::ordered_json;

void SendError(httplib::Response& res, int status, std::string_view code, std::string_view message) {
  res.status = status;
  res.set_content(json{{"code", code}, {"message", message}}.dump(), "application/json");
}

void SendError(httplib::Response& res, const Error& e) {
  SendError(res, HttpStatusFor(e.code()), ErrorCodeName(e.code()), e.what());
}

json ParsedJson(const GeneratedReview& review) {
  json fields = json::object();
  for (const auto& [name, body] : review.field_contents) fields[name] = body;
  json out = {{"field_contents", fields}, {"missing_fields", review.missing_fields}};
  return out;
}

bool SafeId(const std::string& id) {
  return !id.empty() && id.find('/') == std::string::npos && id.find("..") == std::string::npos;
}

std::string SseFrame(const json& payload) { return "data: " + payload.dump() + "\n\n"; }

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kContextTooLong:
      return 413;
    case ErrorCode::kConversion:
    case ErrorCode::kEmptyConversion:
    case ErrorCode::kNothingToEvaluate:
    case ErrorCode::kUnparseableVerdict:
    case ErrorCode::kRecommendationMissing:
      return 422;
    case ErrorCode::kTimeout:
      return 504;
    case ErrorCode::kHttp:
    case ErrorCode::kAuth:
    case ErrorCode::kTransport:
    case ErrorCode::kEmptyCompletion:
    case ErrorCode::kStream:
      return 502;
    case ErrorCode::kCommandNotFound:
      return 503;
    case ErrorCode::kIo:
    case ErrorCode::kInternal:
      return 500;
  }
  return 500;
}

struct ReviewService::Impl {
  AppConfig config;
  TemplateStore templates;
  InferenceClient client;
  std::mutex corpus_writer;
  httplib::Server server;
  std::thread thread;
  std::mutex join_mu;
  int port = 0;

  explicit Impl(AppConfig c)
      : config(std::move(c)),
        templates(config.templates_dir),
        client(config.inference, config.max_concurrency) {}

  void Routes();
  void HandleGenerate(const httplib::Request& req, httplib::Response& res);
  void AppendGenerated(const GeneratedReview& review);
};

void ReviewService::Impl::Routes() {
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });

  server.Get("/templates", [this](const httplib::Request&, httplib::Response& res) {
    json list = json::array();
    for (const auto& t : templates.List()) {
      list.push_back({{"venue_id", t.venue_id}, {"template", SerializeTemplate(t)}});
    }
    res.set_content(json{{"templates", list}}.dump(), "application/json");
  });

  server.Get(R"(/templates/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto t = templates.Get(req.matches[1]);
    if (!t) return SendError(res, 404, "template_not_found", "no template for this venue");
    res.set_content(SerializeTemplate(*t), "text/plain; charset=utf-8");
  });

  server.Put(R"(/templates/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string venue = req.matches[1];
    ReviewTemplate t;
    try {
      t = ParseTemplate(req.body);
      ValidateTemplate(t);
    } catch (const Error& e) {
      return SendError(res, 400, "invalid_template", e.what());
    }
    if (t.venue_id != venue) {
      return SendError(res, 400, "venue_mismatch", "template venue does not match the URL");
    }
    try {
      templates.Put(t);
    } catch (const Error& e) {
      return SendError(res, e);
    }
    res.set_content(json{{"venue_id", venue}}.dump(), "application/json");
  });

  server.Post("/papers/convert", [this](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_file("pdf")) return SendError(res, 400, "missing_pdf", "multipart field 'pdf' is required");
    const auto file = req.get_file_value("pdf");
    std::string path = (std::filesystem::temp_directory_path() / "rk-upload-XXXXXX").string();
    const int fd = ::mkstemp(path.data());
    if (fd < 0) return SendError(res, 500, "io_error", "cannot create temporary file");
    ::close(fd);
    try {
      WriteTextFile(path, file.content);
      const std::string markdown = ConvertPdf(config.converter_command, path);
      std::filesystem::remove(path);
      res.set_content(json{{"markdown", markdown}}.dump(), "application/json");
    } catch (const Error& e) {
      std::error_code ignored;
      std::filesystem::remove(path, ignored);
      SendError(res, e);
    }
  });

  server.Post("/reviews/generate", [this](const httplib::Request& req, httplib::Response& res) {
    HandleGenerate(req, res);
  });

  server.Post("/eval/run", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      return SendError(res, 400, "invalid_json", "request body is not JSON");
    }
    const std::string model_id = body.value("model_id", "");
    if (model_id.empty()) return SendError(res, 400, "invalid_argument", "model_id is required");
    if (config.corpus_path.empty()) return SendError(res, 400, "no_corpus", "no corpus_path configured");
    try {
      Corpus corpus;
      {
        std::lock_guard lock(corpus_writer);
        corpus = LoadCorpus(config.corpus_path);
      }
      const EvaluationRun run = EvaluateCorpus(config, corpus, model_id);
      res.set_content(json{{"report_id", run.run_dir.filename().string()}}.dump(), "application/json");
    } catch (const Error& e) {
      SendError(res, e);
    }
  });

  server.Get(R"(/eval/report/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const auto path = config.results_dir / id / "report.md";
    if (!SafeId(id) || !std::filesystem::is_regular_file(path)) {
      return SendError(res, 404, "report_not_found", "no report with this id");
    }
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    res.set_content(out.str(), "text/markdown; charset=utf-8");
  });

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      SendError(res, e);
    } catch (const std::exception& e) {
      SendError(res, 500, "internal_error", e.what());
    }
  });
}

void ReviewService::Impl::AppendGenerated(const GeneratedReview& review) {
  std::lock_guard lock(corpus_writer);
  Corpus corpus = LoadCorpus(config.corpus_path);
  corpus.AddGeneratedReview(review);
  std::ofstream out(config.corpus_path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kIo, "cannot append to corpus");
  out << GeneratedReviewToJsonLine(review) << "\n";
}

void ReviewService::Impl::HandleGenerate(const httplib::Request& req, httplib::Response& res) {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::exception&) {
    return SendError(res, 400, "invalid_json", "request body is not JSON");
  }
  if (!body.is_object()) return SendError(res, 400, "invalid_json", "request body must be an object");
  const std::string paper_text = body.value("paper_text", "");
  if (paper_text.find_first_not_of(" \t\r\n") == std::string::npos) {
    return SendError(res, 400, "empty_paper", "paper_text is empty");
  }
  const std::string paper_id = body.value("paper_id", "");
  std::string template_id = body.value("template_id", "");
  if (!paper_id.empty()) {
    if (config.corpus_path.empty()) return SendError(res, 400, "no_corpus", "no corpus_path configured");
    std::string venue;
    try {
      std::lock_guard lock(corpus_writer);
      venue = LoadCorpus(config.corpus_path).papers().at(paper_id).venue_id;
    } catch (const std::out_of_range&) {
      return SendError(res, 404, "paper_not_found", "paper_id is not in the corpus");
    } catch (const Error& e) {
      return SendError(res, e);
    }
    if (!template_id.empty() && template_id != venue) {
      return SendError(res, 400, "template_mismatch", "template_id differs from the paper's venue");
    }
    template_id = venue;
  }
  if (template_id.empty()) template_id = "iclr-default";
  auto tmpl = templates.Get(template_id);
  if (!tmpl) return SendError(res, 404, "template_not_found", "no template '" + template_id + "'");

  // Budget errors must surface as a plain response, before any stream starts.
  const PromptBundle bundle = BuildReviewerMessages(*tmpl, paper_text);
  const auto budget = CheckContextBudget(bundle, config.context_tokens,
                                         static_cast<std::size_t>(config.inference.max_output_tokens));
  if (!budget.fits) {
    return SendError(res, 413, "context_too_long",
                     "prompt needs about " + std::to_string(budget.approx_token_count) + " tokens");
  }

  if (!body.value("stream", false)) {
    try {
      const GenerationOutcome outcome =
          GenerateReview(client, *tmpl, paper_text, config.context_tokens, nullptr, paper_id);
      if (!paper_id.empty()) AppendGenerated(outcome.review);
      json out = {{"review_markdown", outcome.review.raw_markdown},
                  {"parsed", ParsedJson(outcome.review)},
                  {"recommendation_raw", nullptr}};
      if (outcome.review.recommendation_raw) out["recommendation_raw"] = *outcome.review.recommendation_raw;
      res.set_content(out.dump(), "application/json");
    } catch (const Error& e) {
      SendError(res, e);
    }
    return;
  }

  res.set_header("Cache-Control", "no-cache");
  res.set_chunked_content_provider(
      "text/event-stream",
      [this, tmpl = *tmpl, paper_text, paper_id](std::size_t, httplib::DataSink& sink) {
        bool open = true;
        auto send = [&](const json& payload) {
          if (!open) return;
          const std::string frame = SseFrame(payload);
          open = sink.write(frame.data(), frame.size());
        };
        const StreamConsumer on_event = [&](const StreamEvent& ev) {
          if (ev.kind == StreamEventKind::kDelta) send({{"kind", "delta"}, {"text", ev.text}});
        };
        try {
          const GenerationOutcome outcome =
              GenerateReview(client, tmpl, paper_text, config.context_tokens, on_event, paper_id);
          if (!paper_id.empty()) AppendGenerated(outcome.review);
          send({{"kind", "done"}, {"finish_reason", outcome.finish_reason}});
        } catch (const Error& e) {
          send({{"kind", "error"}, {"code", ErrorCodeName(e.code())}, {"message", e.what()}});
        }
        if (open) sink.done();
        return open;
      });
}

ReviewService::ReviewService(AppConfig config) {
  config.Validate();
  impl_ = std::make_unique<Impl>(std::move(config));
  impl_->Routes();
  const std::size_t workers = impl_->config.max_concurrency + 4;
  impl_->server.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
}

ReviewService::~ReviewService() { Stop(); }

int ReviewService::Start(const std::string& host, int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (impl_->port <= 0) {
    throw Error(ErrorCode::kIo, "cannot listen on " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

int ReviewService::port() const { return impl_->port; }

void ReviewService::Wait() {
  std::lock_guard lock(impl_->join_mu);
  if (impl_->thread.joinable()) impl_->thread.join();
}

void ReviewService::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  Wait();
}

}  // namespace reviewkit
