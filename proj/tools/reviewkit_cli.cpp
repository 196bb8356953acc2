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

// Command-line front end. Talks to the library only through the C API.

#include <pthread.h>
#include <signal.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "reviewkit/reviewkit.h"

namespace {

using json = nlohmann::json;

struct Failure {
  rk_status status;
};

void Check(rk_status status) {
  if (status != RK_OK) throw Failure{status};
}

// Owns a string returned by the C API.
class RkString {
 public:
  RkString() = default;
  ~RkString() { rk_free(ptr_); }
  RkString(const RkString&) = delete;
  RkString& operator=(const RkString&) = delete;
  char** out() { return &ptr_; }
  json Json() const { return json::parse(ptr_ ? ptr_ : "null"); }

 private:
  char* ptr_ = nullptr;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read '%s'\n", path.c_str());
    throw Failure{RK_ERR_IO};
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string FormatStat(const json& v, int decimals) {
  if (v.is_null()) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v.get<double>());
  return buf;
}

void PrintDelta(const char* text, size_t len, void*) {
  std::fwrite(text, 1, len, stdout);
  std::fflush(stdout);
}

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string endpoint;
  std::string judge_endpoint;
  std::string results_dir;
  std::string corpus_path;
};

rk_app* MakeApp(const Options& opts) {
  rk_app* app = nullptr;
  Check(rk_app_create(opts.config_path.empty() ? nullptr : opts.config_path.c_str(), &app));
  auto set = [&](const std::string& key, const std::string& value) {
    if (!value.empty()) Check(rk_app_set(app, key.c_str(), value.c_str()));
  };
  try {
    set("inference.endpoint_url", opts.endpoint);
    set("judge.endpoint_url", opts.judge_endpoint);
    set("results_dir", opts.results_dir);
    set("corpus_path", opts.corpus_path);
    for (const auto& kv : opts.overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
        throw Failure{RK_ERR_INVALID_ARGUMENT};
      }
      Check(rk_app_set(app, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
  } catch (...) {
    rk_app_destroy(app);
    throw;
  }
  return app;
}

int Serve(rk_app* app, const std::string& listen) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  rk_server* server = nullptr;
  Check(rk_server_start(app, listen.empty() ? nullptr : listen.c_str(), &server));
  std::printf("listening on port %d\n", rk_server_port(server));
  std::fflush(stdout);
  std::thread([server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    rk_server_stop(server);
  }).detach();
  rk_server_wait(server);
  rk_server_destroy(server);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Structured peer-review generation and evaluation"};
  cli.require_subcommand(1);
  Options opts;
  cli.add_option("-c,--config", opts.config_path, "JSON config file");
  cli.add_option("--set", opts.overrides, "Override a config key (key=value)");
  cli.add_option("--endpoint", opts.endpoint, "Reviewer chat-completions endpoint");
  cli.add_option("--judge-endpoint", opts.judge_endpoint, "Judge chat-completions endpoint");
  cli.add_option("--results-dir", opts.results_dir, "Directory for run outputs");

  std::string input;
  std::string template_id;
  std::string output;
  std::string model;
  std::string model_a;
  std::string model_b;
  std::string listen;
  bool no_stream = false;
  bool both_orders = false;

  auto* convert = cli.add_subcommand("convert", "Convert a PDF to markdown with the configured command");
  convert->add_option("pdf", input)->required();
  convert->add_option("-o,--output", output, "Also write the markdown here");

  auto* generate = cli.add_subcommand("generate", "Generate a review for a markdown paper");
  generate->add_option("paper", input)->required();
  generate->add_option("-t,--template", template_id, "Template venue id")->default_val("iclr-default");
  generate->add_flag("--no-stream", no_stream, "Wait for the full completion");

  auto* curate = cli.add_subcommand("curate", "Apply the curation filters to a raw corpus");
  curate->add_option("raw", input)->required();
  curate->add_option("-o,--output", output, "Curated corpus path");

  auto* evaluate = cli.add_subcommand("evaluate", "Recommendation metrics for one model");
  evaluate->add_option("corpus", input)->required();
  evaluate->add_option("--model", model)->required();

  auto* arena = cli.add_subcommand("arena", "Judge pairwise preferences between two models");
  arena->add_option("corpus", input)->required();
  arena->add_option("--a", model_a)->required();
  arena->add_option("--b", model_b)->required();
  arena->add_flag("--both-orders", both_orders, "Also judge with the reviews swapped");

  auto* serve = cli.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--listen", listen, "host:port (default from config)");
  serve->add_option("--corpus", opts.corpus_path, "Corpus used by /eval/run");

  auto* templates = cli.add_subcommand("templates", "List available templates");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return 2;
  }

  rk_app* app = nullptr;
  try {
    app = MakeApp(opts);
    RkString result;
    if (*convert) {
      Check(rk_convert(app, input.c_str(), result.out()));
      const json r = result.Json();
      const std::string markdown = r["markdown"];
      if (!output.empty()) {
        std::ofstream(output, std::ios::binary) << markdown;
      }
      std::printf("converted %s: %zu bytes of markdown\nresults: %s\n", input.c_str(), markdown.size(),
                  r["run_dir"].get<std::string>().c_str());
    } else if (*generate) {
      const std::string paper = ReadFile(input);
      Check(rk_generate(app, paper.c_str(), template_id.c_str(), no_stream ? nullptr : PrintDelta, nullptr,
                        result.out()));
      const json r = result.Json();
      if (no_stream) std::fputs(r["review_markdown"].get<std::string>().c_str(), stdout);
      const json& parsed = r["parsed"];
      std::printf("\n---\nrecommendation: %s\n",
                  parsed["recommendation_raw"].is_null()
                      ? "not found"
                      : std::to_string(parsed["recommendation_raw"].get<int>()).c_str());
      if (!parsed["missing_fields"].empty()) {
        std::printf("missing fields: %s\n", parsed["missing_fields"].dump().c_str());
      }
      std::printf("results: %s\n", r["run_dir"].get<std::string>().c_str());
    } else if (*curate) {
      Check(rk_curate(app, input.c_str(), output.empty() ? nullptr : output.c_str(), result.out()));
      const json r = result.Json();
      const json& s = r["report"];
      const std::size_t by_length =
          s["papers_removed_by_length"].get<std::size_t>() + s["reviews_removed_by_length"].get<std::size_t>();
      std::printf("papers: %zu in, %zu out\n", s["papers_in"].get<std::size_t>(),
                  s["papers_out"].get<std::size_t>());
      std::printf("reviews: %zu in, %zu out\n", s["reviews_in"].get<std::size_t>(),
                  s["reviews_out"].get<std::size_t>());
      std::printf("appendices stripped: %zu\n", s["appendices_stripped"].get<std::size_t>());
      std::printf("removed by length filter: %zu (papers %zu, reviews %zu)\n", by_length,
                  s["papers_removed_by_length"].get<std::size_t>(),
                  s["reviews_removed_by_length"].get<std::size_t>());
      std::printf("reviews removed with their paper: %zu\n", s["reviews_removed_with_paper"].get<std::size_t>());
      std::printf("removed by confidence threshold: %zu\n", s["reviews_removed_by_confidence"].get<std::size_t>());
      std::printf("curated corpus: %s\n", r["output_path"].get<std::string>().c_str());
    } else if (*evaluate) {
      Check(rk_evaluate(app, input.c_str(), model.c_str(), result.out()));
      const json r = result.Json();
      const json& s = r["report"];
      std::printf("%s: %zu papers evaluated, %zu excluded, EM %s%%\n\n", model.c_str(),
                  s["n_papers"].get<std::size_t>(), s["n_excluded"].get<std::size_t>(),
                  FormatStat(s["em_percent"], 1).c_str());
      std::fputs(r["markdown"].get<std::string>().c_str(), stdout);
      std::printf("\nresults: %s\n", r["run_dir"].get<std::string>().c_str());
    } else if (*arena) {
      Check(rk_arena(app, input.c_str(), model_a.c_str(), model_b.c_str(), both_orders ? 1 : 0, result.out()));
      const json r = result.Json();
      std::printf("%zu verdicts, %zu papers skipped, %zu failures\n\n", r["verdicts"].get<std::size_t>(),
                  r["skipped_papers"].get<std::size_t>(), r["failures"].size());
      for (const auto& f : r["failures"]) std::fprintf(stderr, "judge failure: %s\n", f.get<std::string>().c_str());
      std::fputs(r["markdown"].get<std::string>().c_str(), stdout);
      std::printf("\nresults: %s\n", r["run_dir"].get<std::string>().c_str());
    } else if (*serve) {
      const int code = Serve(app, listen);
      rk_app_destroy(app);
      return code;
    } else if (*templates) {
      Check(rk_app_templates(app, result.out()));
      for (const auto& t : result.Json()) std::printf("%s\n", t["venue_id"].get<std::string>().c_str());
    }
  } catch (const Failure& f) {
    if (*rk_last_error() != '\0') {
      std::fprintf(stderr, "error (%s): %s\n", rk_status_name(f.status), rk_last_error());
    }
    rk_app_destroy(app);
    return 1;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: malformed result: %s\n", e.what());
    rk_app_destroy(app);
    return 1;
  }
  rk_app_destroy(app);
  return 0;
}
