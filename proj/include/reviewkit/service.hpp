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

#ifndef REVIEWKIT_SERVICE_HPP_
#define REVIEWKIT_SERVICE_HPP_

#include <memory>
#include <string>

#include "reviewkit/config.hpp"
#include "reviewkit/error.hpp"

namespace reviewkit {

// HTTP API:
//   GET  /healthz
//   GET  /templates                 {"templates":[{"venue_id","template"}]}
//   GET  /templates/{venue_id}      template file text
//   PUT  /templates/{venue_id}      body: template file text
//   POST /papers/convert            multipart field "pdf" -> {"markdown"}
//   POST /reviews/generate          {"paper_text","template_id","paper_id","stream"}
//   POST /eval/run                  {"model_id"} -> {"report_id"}
//   GET  /eval/report/{report_id}   markdown
// Errors are JSON objects with "code" and "message".
class ReviewService {
 public:
  explicit ReviewService(AppConfig config);
  ~ReviewService();
  ReviewService(const ReviewService&) = delete;
  ReviewService& operator=(const ReviewService&) = delete;

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port.
  int Start(const std::string& host, int port);
  int port() const;
  void Wait();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status used for an error code in API responses.
int HttpStatusFor(ErrorCode code);

}  // namespace reviewkit

#endif  // REVIEWKIT_SERVICE_HPP_
