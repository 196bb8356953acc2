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

// Internal helpers shared by the HTTP clients. Not installed.
#ifndef REVIEWKIT_SRC_HTTP_UTIL_HPP_
#define REVIEWKIT_SRC_HTTP_UTIL_HPP_

#include <httplib.h>

#include <memory>
#include <string>

#include "reviewkit/error.hpp"

namespace reviewkit::detail {

struct Endpoint {
  std::string origin;     // scheme://host[:port]
  std::string base_path;  // "" or "/v1" (no trailing slash)
};

inline Endpoint SplitEndpoint(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint '" + url + "' has no scheme");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kInvalidArgument, "unsupported scheme in '" + url + "'");
  }
  const std::size_t path_begin = url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.origin = url.substr(0, path_begin);
  if (path_begin != std::string::npos) ep.base_path = url.substr(path_begin);
  while (!ep.base_path.empty() && ep.base_path.back() == '/') ep.base_path.pop_back();
  return ep;
}

inline std::unique_ptr<httplib::Client> MakeClient(const Endpoint& ep, double timeout_seconds) {
  auto client = std::make_unique<httplib::Client>(ep.origin);
  if (!client->is_valid()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot create HTTP client for '" + ep.origin + "'");
  }
  const auto secs = static_cast<time_t>(timeout_seconds);
  const auto usecs = static_cast<time_t>((timeout_seconds - static_cast<double>(secs)) * 1e6);
  client->set_connection_timeout(secs, usecs);
  client->set_read_timeout(secs, usecs);
  client->set_write_timeout(secs, usecs);
  return client;
}

}  // namespace reviewkit::detail

#endif  // REVIEWKIT_SRC_HTTP_UTIL_HPP_
