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

#include "reviewkit/error.hpp"

namespace reviewkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kHttp: return "http_error";
    case ErrorCode::kAuth: return "auth_error";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kTransport: return "transport_error";
    case ErrorCode::kEmptyCompletion: return "empty_completion";
    case ErrorCode::kStream: return "stream_error";
    case ErrorCode::kConversion: return "conversion_failed";
    case ErrorCode::kCommandNotFound: return "command_not_found";
    case ErrorCode::kEmptyConversion: return "empty_conversion_output";
    case ErrorCode::kUnparseableVerdict: return "unparseable_verdict";
    case ErrorCode::kRecommendationMissing: return "recommendation_missing";
    case ErrorCode::kNothingToEvaluate: return "nothing_to_evaluate";
    case ErrorCode::kContextTooLong: return "context_too_long";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "internal_error";
}

}  // namespace reviewkit
