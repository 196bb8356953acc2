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

#ifndef REVIEWKIT_ERROR_HPP_
#define REVIEWKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace reviewkit {

// Stable error classes. The names returned by ErrorCodeName() appear in HTTP
// error bodies and CLI output, so they must not be renamed.
enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kNotFound,
  kIo,
  kHttp,
  kAuth,
  kTimeout,
  kTransport,
  kEmptyCompletion,
  kStream,
  kConversion,
  kCommandNotFound,
  kEmptyConversion,
  kUnparseableVerdict,
  kRecommendationMissing,
  kNothingToEvaluate,
  kContextTooLong,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int http_status = 0)
      : std::runtime_error(message), code_(code), http_status_(http_status) {}

  ErrorCode code() const noexcept { return code_; }
  // Upstream HTTP status for kHttp / kAuth errors, 0 otherwise.
  int http_status() const noexcept { return http_status_; }

 private:
  ErrorCode code_;
  int http_status_;
};

}  // namespace reviewkit

#endif  // REVIEWKIT_ERROR_HPP_
