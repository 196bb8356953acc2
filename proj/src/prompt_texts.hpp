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

#ifndef REVIEWKIT_SRC_PROMPT_TEXTS_HPP_
#define REVIEWKIT_SRC_PROMPT_TEXTS_HPP_

#include <string_view>

namespace reviewkit::prompts {

extern const std::string_view kReviewerSystemPrompt;
extern const std::string_view kReviewerUserPrompt;
extern const std::string_view kJudgeSystemPrompt;
extern const std::string_view kJudgeUserPrompt;

}  // namespace reviewkit::prompts

#endif  // REVIEWKIT_SRC_PROMPT_TEXTS_HPP_
