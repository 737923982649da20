#pragma once

// Deterministic synthetic inputs shared by the integration and acceptance
// tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polar/distributions.hpp"

namespace fixtures {

// Modes evenly spread over [-0.8, 0.8] (a single mode sits at 0); points are
// dealt round-robin to the modes.
inline std::vector<double> mode_centers(int modes) {
  if (modes == 1) return {0.0};
  std::vector<double> c;
  for (int j = 0; j < modes; ++j) c.push_back(-0.8 + 1.6 * j / (modes - 1));
  return c;
}

inline polar::ScoreSample planted_modes(int modes, std::size_t n, double sigma, std::uint64_t seed) {
  const auto centers = mode_centers(modes);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(std::clamp(centers[i % centers.size()] + sigma * z(rng), -1.0, 1.0));
  }
  return polar::make_sample(std::move(v));
}

// Planted comment corpus with known per-user tallies.
struct PlantedUser {
  std::string id;
  int left = 0;
  int center = 0;
  int right = 0;
  std::set<std::string> groups;

  [[nodiscard]] int comments() const { return left + center + right; }
  [[nodiscard]] double score() const { return static_cast<double>(right - left) / comments(); }
};

struct Corpus {
  std::vector<PlantedUser> users;
  std::string csv;
  std::size_t rows = 0;
};

inline Corpus comment_corpus(std::size_t target_rows, std::uint64_t seed) {
  Corpus corpus;
  // Named behaviours first.
  corpus.users.push_back({"alice", 2, 0, 1, {"g_named"}});     // -1/3, inactive
  corpus.users.push_back({"bob", 2, 1, 1, {"g_named"}});       // 4 comments, inactive
  corpus.users.push_back({"carol", 0, 0, 6, {"g_named"}});     // +1, active
  corpus.users.push_back({"dave", 5, 0, 0, {"g_named"}});      // -1, active at exactly 5
  corpus.users.push_back({"erin", 1, 3, 1, {"g_named"}});      // 0, active
  corpus.users.push_back({"frank", 3, 4, 5, {"g_named", "g_tiny"}});
  corpus.users.push_back({"grace", 7, 0, 3, {"g_named", "g_tiny"}});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> tally(0, 9);
  std::uniform_int_distribution<int> group_pick(0, 39);
  std::uniform_int_distribution<int> group_count(1, 4);

  std::size_t rows = 0;
  for (const auto& u : corpus.users) rows += static_cast<std::size_t>(u.comments());
  for (int i = 0; rows < target_rows; ++i) {
    PlantedUser u;
    u.id = "u" + std::to_string(10000 + i);
    u.left = tally(rng);
    u.center = tally(rng) / 3;
    u.right = tally(rng);
    if (u.comments() == 0) u.center = 1;
    const auto remaining = static_cast<int>(target_rows - rows);
    while (u.comments() > remaining) {
      if (u.left > 0) --u.left;
      else if (u.right > 0) --u.right;
      else --u.center;
    }
    const int wanted = std::min(group_count(rng), u.comments());
    while (static_cast<int>(u.groups.size()) < wanted) {
      const int id = group_pick(rng);
      u.groups.insert((id < 10 ? "g0" : "g") + std::to_string(id));
    }
    rows += static_cast<std::size_t>(u.comments());
    corpus.users.push_back(std::move(u));
  }

  // One line per comment, spread over the user's groups, then shuffled.
  struct Line {
    std::string user, group, leaning;
  };
  std::vector<Line> lines;
  const char* left_names[] = {"left", "-1", "Left"};
  const char* center_names[] = {"center", "0", "centre"};
  const char* right_names[] = {"right", "1", "+1"};
  for (const auto& u : corpus.users) {
    std::vector<std::string> groups(u.groups.begin(), u.groups.end());
    int j = 0;
    auto emit = [&](const char* const* names, int count) {
      for (int c = 0; c < count; ++c, ++j) {
        lines.push_back({u.id, groups[static_cast<std::size_t>(j) % groups.size()], names[j % 3]});
      }
    };
    emit(left_names, u.left);
    emit(center_names, u.center);
    emit(right_names, u.right);
  }
  std::shuffle(lines.begin(), lines.end(), rng);

  std::ostringstream csv;
  csv << "comment_id,user_id,video_id,channel_leaning\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    csv << 'c' << i << ',' << lines[i].user << ',' << lines[i].group << ',' << lines[i].leaning << '\n';
  }
  corpus.csv = csv.str();
  corpus.rows = lines.size();
  return corpus;
}

// Unique active users per group implied by the planted design.
inline std::map<std::string, std::size_t> expected_group_sizes(const Corpus& corpus, int activity_threshold,
                                                               std::size_t min_users) {
  std::map<std::string, std::size_t> sizes;
  for (const auto& u : corpus.users) {
    if (u.comments() < activity_threshold) continue;
    for (const auto& g : u.groups) ++sizes[g];
  }
  for (auto it = sizes.begin(); it != sizes.end();) {
    it = it->second < min_users ? sizes.erase(it) : std::next(it);
  }
  return sizes;
}

}  // namespace fixtures
