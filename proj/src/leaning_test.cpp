#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "polar/error.hpp"
#include "polar/leaning.hpp"

using namespace polar;

namespace {

CommentRecord rec(std::string user, std::string group, SourceLeaning l) {
  return {std::move(user), std::move(group), l};
}

constexpr auto L = SourceLeaning::Left;
constexpr auto C = SourceLeaning::Center;
constexpr auto R = SourceLeaning::Right;

}  // namespace

TEST_SUITE("leaning") {

TEST_CASE("parse_leaning accepts names and numbers") {
  CHECK(parse_leaning("left") == L);
  CHECK(parse_leaning(" Right ") == R);
  CHECK(parse_leaning("centre") == C);
  CHECK(parse_leaning("-1") == L);
  CHECK(parse_leaning("+1") == R);
  CHECK(parse_leaning("0") == C);
  CHECK_FALSE(parse_leaning("2"));
  CHECK_FALSE(parse_leaning(""));
  CHECK_FALSE(parse_leaning("leftish"));
}

TEST_CASE("user scores are comment means") {
  const std::vector<CommentRecord> r{rec("a", "g1", L), rec("a", "g1", L), rec("a", "g2", R),
                                     rec("b", "g1", R), rec("b", "g1", R), rec("b", "g1", R),
                                     rec("b", "g1", R), rec("b", "g1", R), rec("c", "g1", C),
                                     rec("c", "g1", L), rec("c", "g1", C), rec("c", "g1", C)};
  const auto users = infer_user_leanings(r, 5);
  CHECK(users.at("a").score == doctest::Approx(-1.0 / 3.0));
  CHECK(users.at("a").comment_count == 3);
  CHECK_FALSE(users.at("a").active);
  CHECK(users.at("b").score == 1.0);
  CHECK(users.at("b").active);
  CHECK(users.at("c").comment_count == 4);
  CHECK_FALSE(users.at("c").active);
  CHECK(users.at("c").score == -0.25);
  CHECK_THROWS_AS((void)infer_user_leanings(r, 0), Error);
}

TEST_CASE("groups keep one score per unique active user") {
  std::vector<CommentRecord> r;
  // five active users, one of whom posts ten times in g_big
  for (int u = 0; u < 5; ++u) {
    for (int c = 0; c < 5; ++c) r.push_back(rec("u" + std::to_string(u), "g_big", u % 2 ? L : R));
  }
  for (int c = 0; c < 10; ++c) r.push_back(rec("u0", "g_big", R));
  // g_small: 6 comments from 3 active users
  for (int u = 0; u < 3; ++u) {
    r.push_back(rec("u" + std::to_string(u), "g_small", C));
    r.push_back(rec("u" + std::to_string(u), "g_small", C));
  }
  // g_lurkers: inactive users only
  for (int u = 0; u < 8; ++u) r.push_back(rec("lurker" + std::to_string(u), "g_lurkers", L));

  const auto users = infer_user_leanings(r, 5);
  const auto groups = build_group_vectors(r, users, 5);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].group_id == "g_big");
  CHECK(groups[0].unique_active_users == 5);
  CHECK(groups[0].sample.size() == 5);
  const auto scores = groups[0].sample.scores();
  CHECK(std::count(scores.begin(), scores.end(), users.at("u0").score) == 1);

  const auto loose = build_group_vectors(r, users, 3);
  CHECK(loose.size() == 2);
  CHECK_THROWS_AS((void)build_group_vectors(r, users, 0), Error);
}

TEST_CASE("corpus accumulator matches the batch functions and is order independent") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> user(0, 40), group(0, 9), lean(-1, 1);
  std::vector<CommentRecord> r;
  for (int i = 0; i < 2000; ++i) {
    r.push_back(rec("u" + std::to_string(user(rng)), "g" + std::to_string(group(rng)),
                    static_cast<SourceLeaning>(lean(rng))));
  }
  const auto users = infer_user_leanings(r, 5);
  const auto groups = build_group_vectors(r, users, 5);

  CommentCorpus whole;
  for (const auto& x : r) whole.add(x);
  const auto vectors = whole.group_vectors(5, 5);
  REQUIRE(vectors.size() == groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(vectors[i].group_id == groups[i].group_id);
    CHECK(vectors[i].sample == groups[i].sample);
  }

  // shuffled and sharded by user gives the same answer
  std::shuffle(r.begin(), r.end(), rng);
  CommentCorpus a, b;
  for (const auto& x : r) (std::hash<std::string>{}(x.user_id) % 2 ? a : b).add(x);
  b.merge(a);
  CHECK(b.record_count() == 2000);
  CHECK(b.user_count() == whole.user_count());
  const auto merged = b.group_vectors(5, 5);
  REQUIRE(merged.size() == vectors.size());
  for (std::size_t i = 0; i < merged.size(); ++i) CHECK(merged[i].sample == vectors[i].sample);

  for (const auto& u : whole.user_leanings(5)) {
    CHECK(u.score >= -1.0);
    CHECK(u.score <= 1.0);
    CHECK(u.score == users.at(u.user_id).score);
  }
}

TEST_CASE("reading a comment CSV skips and reports malformed rows") {
  std::istringstream in(
      "comment_id,user_id,video_id,channel_leaning,text\n"
      "1,alice,v1,left,hello\n"
      "2,bob,v1,sideways,bad leaning\n"
      "3,,v1,right,no user\n"
      "4,carol,v2\n"
      "\n"
      "5,dave,v2,\"+1\",\"quoted, with comma\"\n");
  std::vector<CommentRecord> got;
  const auto summary = read_comment_csv(in, [&](const CommentRecord& r) { got.push_back(r); });
  CHECK(summary.rows == 5);
  CHECK(summary.malformed == 3);
  CHECK(summary.malformed_lines == std::vector<std::uint64_t>{3, 4, 5});
  REQUIRE(got.size() == 2);
  CHECK(got[0].user_id == "alice");
  CHECK(got[1].source_leaning == R);
  CHECK(got[1].group_id == "v2");

  std::istringstream no_header("user_id,channel_leaning\nalice,left\n");
  CHECK_THROWS_AS(read_comment_csv(no_header, [](const CommentRecord&) {}), Error);

  std::istringstream grouped("group_id,user_id,channel_leaning\ng,u,1\n");
  CHECK(read_comment_csv(grouped, [](const CommentRecord&) {}).rows == 1);
}

}  // TEST_SUITE
