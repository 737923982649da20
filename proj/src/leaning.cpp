#include "polar/leaning.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "polar/error.hpp"
#include "polar/io.hpp"

namespace polar {

namespace {

constexpr std::size_t kMalformedLinesKept = 20;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<SourceLeaning> parse_leaning(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "left" || t == "-1") return SourceLeaning::Left;
  if (t == "center" || t == "centre" || t == "0") return SourceLeaning::Center;
  if (t == "right" || t == "1" || t == "+1") return SourceLeaning::Right;
  return std::nullopt;
}

void CommentCorpus::add(const CommentRecord& record) {
  auto& tally = users_[record.user_id];
  tally.sum += static_cast<int>(record.source_leaning);
  ++tally.count;
  groups_[record.group_id].insert(record.user_id);
  ++records_;
}

void CommentCorpus::merge(const CommentCorpus& other) {
  for (const auto& [user, tally] : other.users_) {
    auto& mine = users_[user];
    mine.sum += tally.sum;
    mine.count += tally.count;
  }
  for (const auto& [group, members] : other.groups_) {
    groups_[group].insert(members.begin(), members.end());
  }
  records_ += other.records_;
}

std::vector<UserLeaning> CommentCorpus::user_leanings(std::size_t activity_threshold) const {
  std::vector<UserLeaning> out;
  out.reserve(users_.size());
  for (const auto& [user, tally] : users_) {
    out.push_back({user, static_cast<double>(tally.sum) / static_cast<double>(tally.count),
                   tally.count, tally.count >= activity_threshold});
  }
  std::sort(out.begin(), out.end(),
            [](const UserLeaning& a, const UserLeaning& b) { return a.user_id < b.user_id; });
  return out;
}

std::vector<GroupVector> CommentCorpus::group_vectors(std::size_t activity_threshold,
                                                      std::size_t min_users) const {
  std::vector<GroupVector> out;
  for (const auto& [group, members] : groups_) {
    std::vector<double> scores;
    for (const auto& user : members) {
      const auto& tally = users_.at(user);
      if (tally.count >= activity_threshold) {
        scores.push_back(static_cast<double>(tally.sum) / static_cast<double>(tally.count));
      }
    }
    if (scores.empty() || scores.size() < min_users) continue;
    const std::size_t unique = scores.size();
    out.push_back({group, make_sample(std::move(scores)), unique});
  }
  std::sort(out.begin(), out.end(),
            [](const GroupVector& a, const GroupVector& b) { return a.group_id < b.group_id; });
  return out;
}

std::map<std::string, UserLeaning> infer_user_leanings(std::span<const CommentRecord> records,
                                                       std::size_t activity_threshold) {
  if (activity_threshold == 0) {
    throw Error(ErrorCode::BadParams, "activity threshold must be at least 1");
  }
  CommentCorpus corpus;
  for (const auto& r : records) corpus.add(r);
  std::map<std::string, UserLeaning> out;
  for (auto& u : corpus.user_leanings(activity_threshold)) out.emplace(u.user_id, std::move(u));
  return out;
}

std::vector<GroupVector> build_group_vectors(std::span<const CommentRecord> records,
                                             const std::map<std::string, UserLeaning>& leanings,
                                             std::size_t min_users) {
  if (min_users == 0) {
    throw Error(ErrorCode::BadParams, "minimum group size must be at least 1");
  }
  std::map<std::string, std::vector<const UserLeaning*>> members;
  for (const auto& r : records) {
    const auto it = leanings.find(r.user_id);
    if (it == leanings.end() || !it->second.active) continue;
    auto& list = members[r.group_id];
    if (std::find(list.begin(), list.end(), &it->second) == list.end()) list.push_back(&it->second);
  }
  std::vector<GroupVector> out;
  for (const auto& [group, users] : members) {
    if (users.size() < min_users) continue;
    std::vector<double> scores;
    scores.reserve(users.size());
    for (const auto* u : users) scores.push_back(u->score);
    out.push_back({group, make_sample(std::move(scores)), users.size()});
  }
  return out;
}

IngestSummary read_comment_csv(std::istream& in,
                               const std::function<void(const CommentRecord&)>& sink) {
  IngestSummary summary;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> user_col, group_col, leaning_col;
  std::size_t width = 0;

  auto malformed = [&] {
    ++summary.malformed;
    if (summary.malformed_lines.size() < kMalformedLinesKept) summary.malformed_lines.push_back(line_no);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (!user_col) {
      if (!fields) throw Error(ErrorCode::Parse, "line 1: unreadable header");
      for (std::size_t i = 0; i < fields->size(); ++i) {
        const auto name = lower(trim((*fields)[i]));
        if (name == "user_id") user_col = i;
        else if (name == "video_id" || name == "group_id") group_col = i;
        else if (name == "channel_leaning") leaning_col = i;
      }
      if (!user_col || !group_col || !leaning_col) {
        throw Error(ErrorCode::Parse,
                    "comment CSV header must contain user_id, video_id and channel_leaning");
      }
      width = std::max({*user_col, *group_col, *leaning_col}) + 1;
      continue;
    }

    ++summary.rows;
    if (!fields || fields->size() < width) {
      malformed();
      continue;
    }
    const auto user = trim((*fields)[*user_col]);
    const auto group = trim((*fields)[*group_col]);
    const auto leaning = parse_leaning((*fields)[*leaning_col]);
    if (user.empty() || group.empty() || !leaning) {
      malformed();
      continue;
    }
    sink(CommentRecord{std::string(user), std::string(group), *leaning});
  }
  if (!user_col) throw Error(ErrorCode::Parse, "comment CSV is empty");
  return summary;
}

}  // namespace polar
