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

#ifndef REVIEWKIT_PROMPTING_HPP_
#define REVIEWKIT_PROMPTING_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reviewkit/corpus.hpp"
#include "reviewkit/template_engine.hpp"

namespace reviewkit {

enum class Role { kSystem, kUser };
std::string_view RoleName(Role role);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

// Exactly one system message, first.
struct PromptBundle {
  std::vector<ChatMessage> messages;
  std::size_t approx_token_count = 0;
};

// Replaces every `{name}` in `frame` whose name is a key of `values`, in one
// left-to-right pass; substituted text is never rescanned. Throws
// Error(kInvalidArgument) if `frame` contains a placeholder from
// `known_placeholders` that has no value.
std::string SubstitutePlaceholders(std::string_view frame,
                                   const std::map<std::string, std::string>& values,
                                   std::span<const std::string_view> known_placeholders);

// Reviewer system prompt with {review_fields} filled, user prompt
// "Review the following paper:\n\n" + paper_text.
PromptBundle BuildReviewerMessages(const ReviewTemplate& tmpl, std::string_view paper_text);

// Markdown for one expert review: `## Field` sections in template order.
std::string SerializeExpertReview(const ReviewTemplate& tmpl, const HumanReview& review);

PromptBundle BuildJudgeMessages(const ReviewTemplate& tmpl,
                                std::span<const HumanReview> expert_reviews,
                                std::string_view review_a, std::string_view review_b);

inline constexpr std::size_t kDefaultContextTokens = 131072;
inline constexpr std::size_t kDefaultGenerationReserve = 4096;

// ceil(characters / 4) over all message contents.
std::size_t ApproxTokenCount(std::span<const ChatMessage> messages);

struct BudgetCheck {
  bool fits = false;
  std::size_t approx_token_count = 0;
};

BudgetCheck CheckContextBudget(const PromptBundle& bundle,
                               std::size_t max_tokens = kDefaultContextTokens,
                               std::size_t reserved_generation = kDefaultGenerationReserve);

}  // namespace reviewkit

#endif  // REVIEWKIT_PROMPTING_HPP_
