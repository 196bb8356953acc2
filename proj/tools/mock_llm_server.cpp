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

// Deterministic offline stand-in for a chat-completions server.

#include <pthread.h>
#include <signal.h>

#include <CLI11.hpp>
#include <cstdio>
#include <thread>

#include "reviewkit/mock_llm.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Mock chat-completions server"};
  std::string host = "127.0.0.1";
  int port = 8000;
  cli.add_option("--host", host);
  cli.add_option("--port", port, "0 picks a free port");
  CLI11_PARSE(cli, argc, argv);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  reviewkit::MockLlmServer server;
  try {
    server.Start(host, port);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  std::printf("mock endpoint: %s\n", server.endpoint_url().c_str());
  std::fflush(stdout);
  int sig = 0;
  sigwait(&signals, &sig);
  server.Stop();
  return 0;
}
