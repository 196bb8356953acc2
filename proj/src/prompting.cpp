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

#include "reviewkit/prompting.hpp"

#include "prompt_texts.hpp"
#include "reviewkit/error.hpp"
#include "reviewkit/text_util.hpp"

namespace reviewkit {
namespace {

constexpr std::string_view kReviewerPlaceholders[] = {"review_fields", "paper_text"};
constexpr std::string_view kJudgePlaceholders[] = {"n_expert_reviews", "review_fields",
                                                   "expert_reviews", "review_a", "review_b"};

PromptBundle MakeBundle(std::string system, std::string user) {
  PromptBundle bundle;
  bundle.messages.push_back({Role::kSystem, std::move(system)});
  bundle.messages.push_back({Role::kUser, std::move(user)});
  bundle.approx_token_count = ApproxTokenCount(bundle.messages);
  return bundle;
}

}  // namespace

std::string_view RoleName(Role role) { return role == Role::kSystem ? "system" : "user"; }

std::string SubstitutePlaceholders(std::string_view frame,
                                   const std::map<std::string, std::string>& values,
                                   std::span<const std::string_view> known_placeholders) {
  std::string out;
  out.reserve(frame.size());
  std::size_t pos = 0;
  while (pos < frame.size()) {
    const std::size_t open = frame.find('{', pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = frame.find_first_of("{}", open + 1);
    if (close == std::string_view::npos) break;
    if (frame[close] == '{') {
      out.append(frame.substr(pos, close - pos));
      pos = close;
      continue;
    }
    const std::string name(frame.substr(open + 1, close - open - 1));
    out.append(frame.substr(pos, open - pos));
    if (auto it = values.find(name); it != values.end()) {
      out += it->second;
    } else {
      for (std::string_view known : known_placeholders) {
        if (known == name) {
          throw Error(ErrorCode::kInvalidArgument, "unresolved placeholder {" + name + "}");
        }
      }
      out.append(frame.substr(open, close - open + 1));
    }
    pos = close + 1;
  }
  out.append(frame.substr(std::min(pos, frame.size())));
  return out;
}

PromptBundle BuildReviewerMessages(const ReviewTemplate& tmpl, std::string_view paper_text) {
  if (text::Trim(paper_text).empty()) throw Error(ErrorCode::kInvalidArgument, "paper text is empty");
  std::string system = SubstitutePlaceholders(
      prompts::kReviewerSystemPrompt, {{"review_fields", RenderReviewFields(tmpl)}},
      kReviewerPlaceholders);
  std::string user = SubstitutePlaceholders(
      prompts::kReviewerUserPrompt, {{"paper_text", std::string(paper_text)}}, kReviewerPlaceholders);
  return MakeBundle(std::move(system), std::move(user));
}

std::string SerializeExpertReview(const ReviewTemplate& tmpl, const HumanReview& review) {
  std::string out;
  auto section = [&out](std::string_view name, std::string_view body) {
    if (!out.empty()) out += "\n\n";
    out += "## ";
    out += name;
    out += "\n";
    out += text::Trim(body);
  };
  for (const ReviewField& f : tmpl.fields) {
    const std::string key = text::NormalizeHeading(f.name);
    const std::string* body = nullptr;
    for (const auto& [name, value] : review.field_contents) {
      if (text::NormalizeHeading(name) == key) {
        body = &value;
        break;
      }
    }
    if (body != nullptr) {
      section(f.name, *body);
    } else if (f.is_recommendation) {
      section(f.name, std::to_string(review.recommendation_raw));
    }
  }
  return out;
}

PromptBundle BuildJudgeMessages(const ReviewTemplate& tmpl,
                                std::span<const HumanReview> expert_reviews,
                                std::string_view review_a, std::string_view review_b) {
  if (expert_reviews.empty()) throw Error(ErrorCode::kInvalidArgument, "no expert reviews");
  if (text::Trim(review_a).empty() || text::Trim(review_b).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "candidate review is empty");
  }
  std::string experts;
  for (std::size_t i = 0; i < expert_reviews.size(); ++i) {
    const std::string tag = "expert_review_" + std::to_string(i + 1);
    if (i > 0) experts += "\n\n";
    experts += "<" + tag + ">\n" + SerializeExpertReview(tmpl, expert_reviews[i]) + "\n</" + tag + ">";
  }
  std::string system = SubstitutePlaceholders(
      prompts::kJudgeSystemPrompt,
      {{"n_expert_reviews", std::to_string(expert_reviews.size())},
       {"review_fields", RenderReviewFields(tmpl)}},
      kJudgePlaceholders);
  std::string user = SubstitutePlaceholders(prompts::kJudgeUserPrompt,
                                            {{"expert_reviews", experts},
                                             {"review_a", std::string(text::Trim(review_a))},
                                             {"review_b", std::string(text::Trim(review_b))}},
                                            kJudgePlaceholders);
  return MakeBundle(std::move(system), std::move(user));
}

std::size_t ApproxTokenCount(std::span<const ChatMessage> messages) {
  std::size_t chars = 0;
  for (const ChatMessage& m : messages) chars += text::CountCodePoints(m.content);
  return (chars + 3) / 4;
}

BudgetCheck CheckContextBudget(const PromptBundle& bundle, std::size_t max_tokens,
                               std::size_t reserved_generation) {
  BudgetCheck check;
  check.approx_token_count = ApproxTokenCount(bundle.messages);
  check.fits = check.approx_token_count + reserved_generation <= max_tokens;
  return check;
}

}  // namespace reviewkit
