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

#include <atomic>
#include <json.hpp>
#include <optional>
#include <thread>

#include "http_util.hpp"
#include "reviewkit/corpus.hpp"
#include "reviewkit/error.hpp"

namespace reviewkit {
namespace {

using ojson = nlohmann::ordered_json;

// API v2 wraps content values as {"value": ...}; v1 stores them directly.
const ojson* ContentValue(const ojson& note, const char* key) {
  auto content = note.find("content");
  if (content == note.end() || !content->is_object()) return nullptr;
  auto it = content->find(key);
  if (it == content->end()) return nullptr;
  if (it->is_object()) {
    auto v = it->find("value");
    return v == it->end() ? nullptr : &*v;
  }
  return &*it;
}

// 6 or "6: marginally above the acceptance threshold".
std::optional<int> LeadingInt(const ojson* v) {
  if (v == nullptr) return std::nullopt;
  if (v->is_number_integer()) return v->get<int>();
  if (!v->is_string()) return std::nullopt;
  const std::string s = v->get<std::string>();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  std::size_t j = i;
  while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
  if (j == i || j - i > 9) return std::nullopt;
  return std::stoi(s.substr(i, j - i));
}

std::vector<std::string> Invitations(const ojson& note) {
  std::vector<std::string> out;
  if (auto it = note.find("invitations"); it != note.end() && it->is_array()) {
    for (const ojson& s : *it) {
      if (s.is_string()) out.push_back(s.get<std::string>());
    }
  }
  if (auto it = note.find("invitation"); it != note.end() && it->is_string()) {
    out.push_back(it->get<std::string>());
  }
  return out;
}

bool HasInvitation(const ojson& note, std::string_view needle) {
  for (const std::string& inv : Invitations(note)) {
    if (inv.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string StringOrEmpty(const ojson* v) {
  return v != nullptr && v->is_string() ? v->get<std::string>() : std::string();
}

std::int64_t Timestamp(const ojson& note) {
  for (const char* key : {"cdate", "tcdate", "tmdate"}) {
    if (auto it = note.find(key); it != note.end() && it->is_number_integer()) {
      return it->get<std::int64_t>();
    }
  }
  return 0;
}

}  // namespace

ForumRecords MapForumNotes(std::string_view json_body, std::string_view forum_id) {
  ojson body;
  try {
    body = ojson::parse(json_body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("notes response is not JSON: ") + e.what());
  }
  auto notes = body.find("notes");
  if (notes == body.end() || !notes->is_array()) {
    throw Error(ErrorCode::kParse, "notes response has no 'notes' array");
  }

  ForumRecords out;
  const ojson* submission = nullptr;
  for (const ojson& note : *notes) {
    if (note.value("id", "") == forum_id) {
      submission = &note;
      break;
    }
  }
  if (submission == nullptr) {
    throw Error(ErrorCode::kParse, "forum '" + std::string(forum_id) + "' has no submission note");
  }
  out.paper.paper_id = std::string(forum_id);
  out.paper.title = StringOrEmpty(ContentValue(*submission, "title"));
  out.paper.venue_id = StringOrEmpty(ContentValue(*submission, "venueid"));
  if (out.paper.venue_id.empty()) {
    const std::vector<std::string> inv = Invitations(*submission);
    if (!inv.empty()) out.paper.venue_id = inv.front().substr(0, inv.front().find("/-/"));
  }
  out.paper.revision_timestamp = Timestamp(*submission);
  out.paper.source = PaperSource::kFetched;

  for (const ojson& note : *notes) {
    if (&note == submission) continue;
    const bool is_review = HasInvitation(note, "Official_Review") ||
                           ContentValue(note, "rating") != nullptr ||
                           ContentValue(note, "recommendation") != nullptr;
    if (!is_review || HasInvitation(note, "Meta_Review")) continue;

    std::optional<int> recommendation = LeadingInt(ContentValue(note, "rating"));
    if (!recommendation) recommendation = LeadingInt(ContentValue(note, "recommendation"));
    const std::optional<int> confidence = LeadingInt(ContentValue(note, "confidence"));
    const std::string id = note.value("id", "");
    if (!recommendation || !confidence || id.empty()) {
      ++out.skipped_notes;
      continue;
    }
    HumanReview review;
    review.review_id = id;
    review.paper_id = std::string(forum_id);
    review.recommendation_raw = *recommendation;
    review.confidence_raw = *confidence;
    for (const auto& [key, raw] : note.at("content").items()) {
      const ojson& v = raw.is_object() && raw.contains("value") ? raw.at("value") : raw;
      if (v.is_string()) {
        review.field_contents.emplace_back(key, v.get<std::string>());
      } else if (v.is_number()) {
        review.field_contents.emplace_back(key, v.dump());
      }
    }
    out.reviews.push_back(std::move(review));
  }
  return out;
}

ForumRecords FetchForumRecords(const std::string& endpoint_url, const std::string& forum_id,
                               double timeout_seconds) {
  const detail::Endpoint ep = detail::SplitEndpoint(endpoint_url);
  auto client = detail::MakeClient(ep, timeout_seconds);
  const std::string path =
      ep.base_path + "/notes?forum=" + httplib::detail::encode_query_param(forum_id);
  httplib::Result res = client->Get(path);
  if (!res) {
    throw Error(ErrorCode::kTransport, "GET " + path + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::kHttp,
                "GET " + path + " returned HTTP " + std::to_string(res->status), res->status);
  }
  return MapForumNotes(res->body, forum_id);
}

std::vector<ForumRecords> FetchForums(const std::string& endpoint_url,
                                      const std::vector<std::string>& forum_ids,
                                      std::size_t max_parallel) {
  std::vector<std::optional<ForumRecords>> results(forum_ids.size());
  std::vector<std::exception_ptr> errors(forum_ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < forum_ids.size(); i = next++) {
      try {
        results[i] = FetchForumRecords(endpoint_url, forum_ids[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::max<std::size_t>(1, std::min(max_parallel, forum_ids.size()));
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  std::vector<ForumRecords> out;
  for (std::size_t i = 0; i < forum_ids.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

}  // namespace reviewkit
