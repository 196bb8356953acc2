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

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <json.hpp>
#include <thread>

#include "reviewkit/corpus.hpp"
#include "reviewkit/error.hpp"
#include "test_support.hpp"

namespace reviewkit {
namespace {

using json = nlohmann::json;

Corpus SmallCorpus() {
  Corpus c;
  c.AddTemplate(ParseTemplate(rktest::kTinyTemplate));
  c.AddPaper(MakePaper("p1", "tiny", "First", "# First\n\nSome words here."));
  c.AddPaper(MakePaper("p2", "tiny", "Second", "Other text", PaperSource::kConvertedPdf, 1700000000000));
  c.AddReview({"r1", "p1", {{"Summary", "ok"}, {"Rating", "3"}}, 3, 4});
  c.AddReview({"r2", "p1", {{"Summary", "meh"}}, 2, 5});
  c.AddReview({"r3", "p2", {}, 4, 3});
  GeneratedReview g;
  g.paper_id = "p1";
  g.model_id = "m";
  g.raw_markdown = "## Summary\nx\n## Rating\n4\n";
  g.field_contents = {{"Summary", "x"}, {"Rating", "4"}};
  g.recommendation_raw = 4;
  c.AddGeneratedReview(g);
  return c;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInternal;
}

TEST(CorpusTest, MakePaperCountsWords) {
  const auto p = MakePaper("id", "tiny", "T", "one two  three\nfour");
  EXPECT_EQ(p.word_count, 4);
  EXPECT_EQ(p.source, PaperSource::kPastedMarkdown);
}

TEST(CorpusTest, Accessors) {
  const Corpus c = SmallCorpus();
  EXPECT_EQ(c.papers().size(), 2u);
  EXPECT_EQ(c.review_count(), 3u);
  EXPECT_EQ(c.ReviewsOf("p1").size(), 2u);
  EXPECT_TRUE(c.ReviewsOf("nope").empty());
  EXPECT_EQ(c.TemplateFor("p2").venue_id, "tiny");
  ASSERT_NE(c.GeneratedBy("p1", "m"), nullptr);
  EXPECT_EQ(c.GeneratedBy("p1", "other"), nullptr);
  EXPECT_EQ(c.GeneratedBy("p2", "m"), nullptr);
}

TEST(CorpusTest, InvariantsEnforced) {
  Corpus c = SmallCorpus();
  EXPECT_EQ(CodeOf([&] { c.AddPaper(MakePaper("p1", "tiny", "dup", "x")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { c.AddPaper(MakePaper("p9", "nowhere", "t", "x")); }), ErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { c.AddPaper(MakePaper("p9", "tiny", "t", "   ")); }), ErrorCode::kInvalidArgument);
  PaperRecord wrong = MakePaper("p9", "tiny", "t", "a b c");
  wrong.word_count = 7;
  EXPECT_EQ(CodeOf([&] { c.AddPaper(wrong); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { c.AddReview({"r9", "nope", {}, 3, 3}); }), ErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { c.AddReview({"r9", "p1", {}, 7, 3}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { c.AddReview({"r1", "p2", {}, 3, 3}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(c.ReviewsOf("p2").size(), 1u);

  GeneratedReview g;
  g.paper_id = "p2";
  g.model_id = "m";
  g.field_contents = {{"Bogus", "x"}};
  EXPECT_EQ(CodeOf([&] { c.AddGeneratedReview(g); }), ErrorCode::kInvalidArgument);
  g.field_contents = {{std::string(kUnmatchedSections), "## Bogus\nx"}};
  EXPECT_NO_THROW(c.AddGeneratedReview(g));
}

TEST(CorpusTest, JsonlRoundTrip) {
  const Corpus c = SmallCorpus();
  const std::string text = CorpusToJsonl(c);
  EXPECT_EQ(ParseCorpusJsonl(text), c);
  rktest::TempDir dir;
  SaveCorpus(c, dir / "c.jsonl");
  EXPECT_EQ(LoadCorpus(dir / "c.jsonl"), c);
}

TEST(CorpusTest, BuiltinTemplatesFillMissingVenues) {
  const std::string text =
      R"({"kind":"paper","paper_id":"a","venue_id":"iclr-default","markdown_text":"hello world"})"
      "\n"
      R"({"kind":"review","review_id":"r","paper_id":"a","recommendation_raw":6,"confidence_raw":4})"
      "\n";
  const Corpus c = ParseCorpusJsonl(text);
  EXPECT_EQ(c.papers().at("a").word_count, 2);
  EXPECT_EQ(c.TemplateFor("a").venue_id, "iclr-default");
  EXPECT_EQ(ParseCorpusJsonl(CorpusToJsonl(c)), c);
}

TEST(CorpusTest, ParseErrorsCarryLineNumbers) {
  const std::string good = CorpusToJsonl(SmallCorpus());
  try {
    ParseCorpusJsonl(good + "{not json}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line "), std::string::npos);
  }
  EXPECT_EQ(CodeOf([] { ParseCorpusJsonl(R"({"kind":"mystery"})"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] { ParseCorpusJsonl(good + good); }), ErrorCode::kInvalidArgument);
}

TEST(CorpusTest, CollapseRevisionsKeepsEarliest) {
  std::string text;
  auto paper = [&](const std::string& words, std::int64_t ts) {
    json j = {{"kind", "paper"}, {"paper_id", "p"}, {"venue_id", "iclr-default"},
              {"markdown_text", words}, {"revision_timestamp", ts}};
    text += j.dump() + "\n";
  };
  paper("late version", 300);
  paper("early version", 100);
  paper("same time later line", 100);
  LoadOptions opts;
  opts.collapse_revisions = true;
  const Corpus c = ParseCorpusJsonl(text, opts);
  ASSERT_EQ(c.papers().size(), 1u);
  EXPECT_EQ(c.papers().at("p").markdown_text, "early version");
}

TEST(CorpusTest, SelectEarliestRevision) {
  std::vector<Revision> revs = {{5, "b"}, {3, "z"}, {3, "a"}, {9, "c"}};
  EXPECT_EQ(SelectEarliestRevision(revs), "a");
  EXPECT_EQ(CodeOf([] { SelectEarliestRevision({}); }), ErrorCode::kInvalidArgument);
}

TEST(ForumClientTest, MapsV2Notes) {
  const std::string body = R"({"notes":[
    {"id":"f1","forum":"f1","cdate":1690000000000,"invitations":["ICLR.cc/2024/Conference/-/Submission"],
     "content":{"title":{"value":"A Paper"},"venueid":{"value":"ICLR.cc/2024/Conference"}}},
    {"id":"rA","forum":"f1","invitations":["ICLR.cc/2024/Conference/Submission1/-/Official_Review"],
     "content":{"summary":{"value":"Good."},"rating":{"value":6},"confidence":{"value":4}}},
    {"id":"rB","forum":"f1","invitations":["ICLR.cc/2024/Conference/Submission1/-/Official_Review"],
     "content":{"summary":{"value":"Hmm."},"rating":{"value":"3: reject, not good enough"},"confidence":{"value":"2: unsure"}}},
    {"id":"rC","forum":"f1","invitations":["ICLR.cc/2024/Conference/Submission1/-/Official_Review"],
     "content":{"summary":{"value":"No score."}}},
    {"id":"meta","forum":"f1","invitations":["ICLR.cc/2024/Conference/Submission1/-/Meta_Review"],
     "content":{"recommendation":{"value":"Accept"}}},
    {"id":"c1","forum":"f1","invitations":["ICLR.cc/2024/Conference/Submission1/-/Official_Comment"],
     "content":{"comment":{"value":"Thanks"}}}
  ]})";
  const ForumRecords r = MapForumNotes(body, "f1");
  EXPECT_EQ(r.paper.paper_id, "f1");
  EXPECT_EQ(r.paper.title, "A Paper");
  EXPECT_EQ(r.paper.venue_id, "ICLR.cc/2024/Conference");
  EXPECT_EQ(r.paper.revision_timestamp, 1690000000000);
  EXPECT_EQ(r.paper.source, PaperSource::kFetched);
  ASSERT_EQ(r.reviews.size(), 2u);
  EXPECT_EQ(r.reviews[0].recommendation_raw, 6);
  EXPECT_EQ(r.reviews[0].confidence_raw, 4);
  EXPECT_EQ(r.reviews[1].recommendation_raw, 3);
  EXPECT_EQ(r.reviews[1].confidence_raw, 2);
  EXPECT_EQ(*FindFieldText(r.reviews[0].field_contents, "summary"), "Good.");
  EXPECT_EQ(r.skipped_notes, 1u);
}

TEST(ForumClientTest, MapsV1NotesAndRejectsBadBodies) {
  const std::string body = R"({"notes":[
    {"id":"f","invitation":"NeurIPS.cc/2023/Conference/-/Blind_Submission","tcdate":5,"content":{"title":"T"}},
    {"id":"r","invitation":"NeurIPS.cc/2023/Conference/Paper1/-/Official_Review",
     "content":{"rating":"7: accept","confidence":"4"}}]})";
  const ForumRecords r = MapForumNotes(body, "f");
  EXPECT_EQ(r.paper.venue_id, "NeurIPS.cc/2023/Conference");
  EXPECT_EQ(r.paper.revision_timestamp, 5);
  ASSERT_EQ(r.reviews.size(), 1u);
  EXPECT_EQ(r.reviews[0].recommendation_raw, 7);

  EXPECT_EQ(CodeOf([] { MapForumNotes("[]", "f"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { MapForumNotes("nope", "f"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { MapForumNotes(R"({"notes":[{"id":"other"}]})", "f"); }), ErrorCode::kParse);
}

class NotesServer {
 public:
  NotesServer() {
    server_.Get("/api/notes", [this](const httplib::Request& req, httplib::Response& res) {
      const int now = ++in_flight_;
      int seen = max_in_flight_.load();
      while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(30));
      const std::string forum = req.get_param_value("forum");
      --in_flight_;
      if (forum == "missing") {
        res.status = 404;
        return;
      }
      json notes = json::array({{{"id", forum}, {"content", {{"title", "Paper " + forum}}}}});
      res.set_content(json{{"notes", notes}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~NotesServer() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/api"; }
  int max_in_flight() const { return max_in_flight_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

TEST(ForumClientTest, FetchesOverHttp) {
  NotesServer server;
  const ForumRecords r = FetchForumRecords(server.endpoint(), "abc 1");
  EXPECT_EQ(r.paper.paper_id, "abc 1");
  EXPECT_EQ(r.paper.title, "Paper abc 1");
  try {
    FetchForumRecords(server.endpoint(), "missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHttp);
    EXPECT_EQ(e.http_status(), 404);
  }
}

TEST(ForumClientTest, ParallelFetchRespectsBoundAndOrder) {
  NotesServer server;
  std::vector<std::string> ids;
  for (int i = 0; i < 12; ++i) ids.push_back("f" + std::to_string(i));
  const auto out = FetchForums(server.endpoint(), ids, 3);
  ASSERT_EQ(out.size(), ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(out[i].paper.paper_id, ids[i]);
  EXPECT_LE(server.max_in_flight(), 3);
  EXPECT_GE(server.max_in_flight(), 2);
}

}  // namespace
}  // namespace reviewkit
