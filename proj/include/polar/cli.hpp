#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polar/bursts.hpp"
#include "polar/correlation.hpp"
#include "polar/distributions.hpp"
#include "polar/measures.hpp"

namespace polar::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2 };

/// Entry point shared by the `polar` binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

enum class Format { Csv, JsonLines };

struct GroupInput {
  std::string group_id;
  std::optional<ScoreSample> sample;
  std::string load_error;  // set when the group could not be turned into a sample
};

struct BatchOptions {
  ReportOptions report;
  BurstParams bursts;
  Format format = Format::Csv;
  bool stamp = true;
  std::size_t threads = 1;
  /// Extra columns joined on group_id (first column of the metadata CSV).
  std::vector<std::string> meta_columns;
  std::map<std::string, std::vector<std::string>> meta;
};

struct BatchRow {
  std::string group_id;
  std::optional<MeasureReport> report;
  std::optional<std::size_t> peak_count;
  std::optional<std::string> skipped_reason;
  std::optional<std::string> error;
  std::size_t n = 0;
};

struct BatchSummary {
  std::size_t processed = 0;
  std::size_t skipped = 0;
  std::size_t errored = 0;
};

/// Seed used for one group's dip bootstrap; depends only on the base seed
/// and the group id so results do not depend on scheduling.
[[nodiscard]] std::uint64_t group_seed(std::uint64_t base, const std::string& group_id);

[[nodiscard]] BatchRow process_group(const GroupInput& group, const BatchOptions& options);

/// Processes groups (possibly in parallel) and writes rows in group_id
/// order as soon as each prefix is complete.
BatchSummary run_batch(std::vector<GroupInput> groups, const BatchOptions& options, std::ostream& out);

/// Reads a batch output (CSV or JSON lines) and correlates every measure
/// column with peak_count. Throws TooFewRows when fewer than 3 rows carry a
/// peak_count.
[[nodiscard]] CorrelationReport correlate_batch(std::istream& in);

/// Groups from a directory of sample files (one group per file, id = stem),
/// a grouped CSV (group_id, score) or a raw comment CSV.
[[nodiscard]] std::vector<GroupInput> load_groups(const std::string& path, std::size_t activity_threshold,
                                                  std::size_t min_group_users, std::ostream& err);

}  // namespace polar::cli
