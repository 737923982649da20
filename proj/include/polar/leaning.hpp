#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polar/distributions.hpp"

namespace polar {

enum class SourceLeaning : int { Left = -1, Center = 0, Right = 1 };

/// Accepts left|center|right (any case) or -1|0|1.
[[nodiscard]] std::optional<SourceLeaning> parse_leaning(std::string_view text);

struct CommentRecord {
  std::string user_id;
  std::string group_id;
  SourceLeaning source_leaning = SourceLeaning::Center;
};

struct UserLeaning {
  std::string user_id;
  double score = 0.0;
  std::size_t comment_count = 0;
  bool active = false;
};

struct GroupVector {
  std::string group_id;
  ScoreSample sample;
  std::size_t unique_active_users = 0;
};

/// Streaming accumulator over comment records. Keeps one (sum, count) pair
/// per user and the set of commenters per group; accumulators built over
/// disjoint shards can be merged in any order.
class CommentCorpus {
 public:
  void add(const CommentRecord& record);
  void merge(const CommentCorpus& other);

  [[nodiscard]] std::size_t user_count() const noexcept { return users_.size(); }
  [[nodiscard]] std::size_t group_count() const noexcept { return groups_.size(); }
  [[nodiscard]] std::uint64_t record_count() const noexcept { return records_; }

  /// Sorted by user id.
  [[nodiscard]] std::vector<UserLeaning> user_leanings(std::size_t activity_threshold) const;

  /// Groups with at least min_users unique active commenters, sorted by id.
  [[nodiscard]] std::vector<GroupVector> group_vectors(std::size_t activity_threshold,
                                                       std::size_t min_users) const;

 private:
  struct Tally {
    std::int64_t sum = 0;
    std::size_t count = 0;
  };
  std::unordered_map<std::string, Tally> users_;
  std::unordered_map<std::string, std::unordered_set<std::string>> groups_;
  std::uint64_t records_ = 0;
};

/// Per-user mean of comment leanings, keyed by user id.
[[nodiscard]] std::map<std::string, UserLeaning> infer_user_leanings(
    std::span<const CommentRecord> records, std::size_t activity_threshold = 5);

/// One score per unique globally-active commenter; groups with fewer than
/// min_users such commenters are dropped. Sorted by group id.
[[nodiscard]] std::vector<GroupVector> build_group_vectors(
    std::span<const CommentRecord> records, const std::map<std::string, UserLeaning>& leanings,
    std::size_t min_users = 5);

struct IngestSummary {
  std::uint64_t rows = 0;
  std::uint64_t malformed = 0;
  std::vector<std::uint64_t> malformed_lines;  // first few, 1-based
};

/// Reads a comment CSV with header columns user_id, video_id (or group_id)
/// and channel_leaning; other columns are ignored. Malformed rows are skipped
/// and tallied. Throws Parse when the header lacks a required column.
IngestSummary read_comment_csv(std::istream& in,
                               const std::function<void(const CommentRecord&)>& sink);

}  // namespace polar
