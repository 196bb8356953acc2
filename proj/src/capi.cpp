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

#include "reviewkit/reviewkit.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>

#include "reviewkit/config.hpp"
#include "reviewkit/converter.hpp"
#include "reviewkit/error.hpp"
#include "reviewkit/evaluation.hpp"
#include "reviewkit/pipeline.hpp"
#include "reviewkit/review_parse.hpp"
#include "reviewkit/service.hpp"
#include "reviewkit/template_engine.hpp"

struct rk_app {
  reviewkit::AppConfig config;
};

struct rk_server {
  std::unique_ptr<reviewkit::ReviewService> service;
};

namespace {

using json = nlohmann::ordered_json;
using reviewkit::Error;
using reviewkit::ErrorCode;

thread_local std::string g_last_error;

char* Dup(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

rk_status StatusOf(ErrorCode code) { return static_cast<rk_status>(static_cast<int>(code) + 1); }

template <typename Fn>
rk_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RK_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RK_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

json MeanStdJson(const reviewkit::MeanStd& m) {
  return {{"mean", m.mean ? json(*m.mean) : json(nullptr)},
          {"std", m.std ? json(*m.std) : json(nullptr)}};
}

json ParsedJson(const reviewkit::GeneratedReview& review) {
  json fields = json::object();
  for (const auto& [name, body] : review.field_contents) fields[name] = body;
  return {{"field_contents", fields},
          {"missing_fields", review.missing_fields},
          {"recommendation_raw",
           review.recommendation_raw ? json(*review.recommendation_raw) : json(nullptr)}};
}

}  // namespace

extern "C" {

const char* rk_version(void) { return "0.1.0"; }

const char* rk_status_name(rk_status status) {
  if (status == RK_OK) return "ok";
  if (status < RK_ERR_INVALID_ARGUMENT || status > RK_ERR_INTERNAL) return "unknown";
  // Names are backed by static storage.
  return reviewkit::ErrorCodeName(static_cast<ErrorCode>(static_cast<int>(status) - 1)).data();
}

const char* rk_last_error(void) { return g_last_error.c_str(); }

void rk_free(char* s) { std::free(s); }

rk_status rk_app_create(const char* config_path, rk_app** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    auto app = std::make_unique<rk_app>();
    if (config_path != nullptr) app->config = reviewkit::LoadConfig(config_path);
    *out = app.release();
  });
}

rk_status rk_app_set(rk_app* app, const char* key, const char* value) {
  return Guard([&] {
    Require(app && key && value, "app, key and value");
    reviewkit::AppConfig next = app->config;
    reviewkit::SetConfigValue(next, key, value);
    app->config = std::move(next);
  });
}

rk_status rk_app_config_json(const rk_app* app, char** out_json) {
  return Guard([&] {
    Require(app && out_json, "app and out_json");
    *out_json = Dup(reviewkit::ConfigToJson(app->config));
  });
}

void rk_app_destroy(rk_app* app) { delete app; }

rk_status rk_app_templates(const rk_app* app, char** out_json) {
  return Guard([&] {
    Require(app && out_json, "app and out_json");
    json list = json::array();
    for (const auto& t : reviewkit::TemplateStore(app->config.templates_dir).List()) {
      list.push_back({{"venue_id", t.venue_id}, {"template", reviewkit::SerializeTemplate(t)}});
    }
    *out_json = Dup(list.dump());
  });
}

rk_status rk_template_canonical(const char* template_text, char** out_text) {
  return Guard([&] {
    Require(template_text && out_text, "template_text and out_text");
    *out_text = Dup(reviewkit::SerializeTemplate(reviewkit::ParseTemplate(template_text)));
  });
}

rk_status rk_template_render_fields(const char* template_text, char** out_markdown) {
  return Guard([&] {
    Require(template_text && out_markdown, "template_text and out_markdown");
    *out_markdown = Dup(reviewkit::RenderReviewFields(reviewkit::ParseTemplate(template_text)));
  });
}

rk_status rk_review_parse(const char* template_text, const char* review_markdown, char** out_json) {
  return Guard([&] {
    Require(template_text && review_markdown && out_json, "arguments");
    const auto tmpl = reviewkit::ParseTemplate(template_text);
    *out_json = Dup(ParsedJson(reviewkit::ParseReview(review_markdown, tmpl)).dump());
  });
}

rk_status rk_verdict_parse(const char* judge_text, rk_outcome* out) {
  return Guard([&] {
    Require(judge_text && out, "judge_text and out");
    switch (reviewkit::ParseVerdict(judge_text)) {
      case reviewkit::ArenaOutcome::kA: *out = RK_OUTCOME_A; break;
      case reviewkit::ArenaOutcome::kB: *out = RK_OUTCOME_B; break;
      case reviewkit::ArenaOutcome::kTie: *out = RK_OUTCOME_TIE; break;
    }
  });
}

rk_status rk_normalize_score(double raw, int scale_min, int scale_max, double* out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    *out = reviewkit::NormalizeScore(raw, scale_min, scale_max).value();
  });
}

rk_status rk_convert(rk_app* app, const char* pdf_path, char** out_json) {
  return Guard([&] {
    Require(app && pdf_path && out_json, "app, pdf_path and out_json");
    const std::string markdown = reviewkit::ConvertPdf(app->config.converter_command, pdf_path);
    const auto dir = reviewkit::CreateRunDir(app->config.results_dir, "convert");
    reviewkit::WriteTextFile(dir / "paper.md", markdown);
    *out_json = Dup(json{{"markdown", markdown}, {"run_dir", dir.string()}}.dump());
  });
}

rk_status rk_generate(rk_app* app, const char* paper_markdown, const char* template_id,
                      rk_delta_fn on_delta, void* user_data, char** out_json) {
  return Guard([&] {
    Require(app && paper_markdown && out_json, "app, paper_markdown and out_json");
    const std::string id = template_id != nullptr ? template_id : "iclr-default";
    const auto tmpl = reviewkit::TemplateStore(app->config.templates_dir).Get(id);
    if (!tmpl) throw Error(ErrorCode::kNotFound, "no template '" + id + "'");
    reviewkit::InferenceClient client(app->config.inference, app->config.max_concurrency);
    reviewkit::StreamConsumer consumer;
    if (on_delta != nullptr) {
      consumer = [&](const reviewkit::StreamEvent& ev) {
        if (ev.kind == reviewkit::StreamEventKind::kDelta) on_delta(ev.text.data(), ev.text.size(), user_data);
      };
    }
    const auto outcome =
        reviewkit::GenerateReview(client, *tmpl, paper_markdown, app->config.context_tokens, consumer);
    const auto dir = reviewkit::CreateRunDir(app->config.results_dir, "generate");
    reviewkit::WriteTextFile(dir / "review.md", outcome.review.raw_markdown);
    reviewkit::WriteTextFile(dir / "generated_review.jsonl",
                             reviewkit::GeneratedReviewToJsonLine(outcome.review) + "\n");
    json out = {{"review_markdown", outcome.review.raw_markdown},
                {"parsed", ParsedJson(outcome.review)},
                {"finish_reason", outcome.finish_reason},
                {"run_dir", dir.string()}};
    *out_json = Dup(out.dump());
  });
}

rk_status rk_curate(rk_app* app, const char* raw_jsonl_path, const char* output_path, char** out_json) {
  return Guard([&] {
    Require(app && raw_jsonl_path && out_json, "app, raw_jsonl_path and out_json");
    const auto run = reviewkit::CurateFile(app->config, raw_jsonl_path,
                                           output_path != nullptr ? output_path : "");
    const auto& r = run.report;
    json report = {{"papers_in", r.papers_in},
                   {"reviews_in", r.reviews_in},
                   {"appendices_stripped", r.appendices_stripped},
                   {"papers_removed_by_length", r.papers_removed_by_length},
                   {"reviews_removed_by_length", r.reviews_removed_by_length},
                   {"reviews_removed_with_paper", r.reviews_removed_with_paper},
                   {"reviews_removed_by_confidence", r.reviews_removed_by_confidence},
                   {"papers_out", r.papers_out},
                   {"reviews_out", r.reviews_out}};
    json out = {{"report", report},
                {"output_path", run.output_path.string()},
                {"run_dir", run.run_dir.string()}};
    *out_json = Dup(out.dump());
  });
}

rk_status rk_evaluate(rk_app* app, const char* corpus_path, const char* model_id, char** out_json) {
  return Guard([&] {
    Require(app && corpus_path && model_id && out_json, "arguments");
    const auto corpus = reviewkit::LoadCorpus(corpus_path);
    const auto run = reviewkit::EvaluateCorpus(app->config, corpus, model_id);
    const auto& r = run.report;
    json report = {{"model_id", r.model_id},
                   {"n_papers", r.n_papers},
                   {"n_excluded", r.n_excluded},
                   {"em_percent", r.em_percent ? json(*r.em_percent) : json(nullptr)},
                   {"avg_error", MeanStdJson(r.avg_error)},
                   {"avg_recommendation", MeanStdJson(r.avg_recommendation)},
                   {"human_recommendation", MeanStdJson(run.human_recommendation)}};
    json out = {{"report", report}, {"markdown", run.markdown}, {"run_dir", run.run_dir.string()}};
    *out_json = Dup(out.dump());
  });
}

rk_status rk_arena(rk_app* app, const char* corpus_path, const char* model_a, const char* model_b,
                   int both_orders, char** out_json) {
  return Guard([&] {
    Require(app && corpus_path && model_a && model_b && out_json, "arguments");
    const auto corpus = reviewkit::LoadCorpus(corpus_path);
    const auto summary = reviewkit::ArenaCorpus(app->config, corpus, model_a, model_b, both_orders != 0);
    json records = json::array();
    for (const auto& w : summary.records) {
      records.push_back({{"model", w.model},
                         {"opponent", w.opponent},
                         {"wins", w.wins},
                         {"ties", w.ties},
                         {"losses", w.losses},
                         {"win_share", w.win_share}});
    }
    json out = {{"verdicts", summary.run.verdicts.size()},
                {"skipped_papers", summary.run.skipped_papers},
                {"failures", summary.run.failures},
                {"records", records},
                {"markdown", summary.markdown},
                {"run_dir", summary.run_dir.string()}};
    *out_json = Dup(out.dump());
  });
}

rk_status rk_server_start(const rk_app* app, const char* listen_address, rk_server** out) {
  return Guard([&] {
    Require(app && out, "app and out");
    const auto [host, port] = reviewkit::SplitListenAddress(
        listen_address != nullptr ? std::string_view(listen_address) : app->config.listen_address);
    auto server = std::make_unique<rk_server>();
    server->service = std::make_unique<reviewkit::ReviewService>(app->config);
    server->service->Start(host, port);
    *out = server.release();
  });
}

int rk_server_port(const rk_server* server) { return server ? server->service->port() : -1; }

void rk_server_wait(rk_server* server) {
  if (server) server->service->Wait();
}

void rk_server_stop(rk_server* server) {
  if (server) server->service->Stop();
}

void rk_server_destroy(rk_server* server) { delete server; }

}  // extern "C"
