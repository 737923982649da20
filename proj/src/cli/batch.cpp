#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polar/cli.hpp"
#include "polar/error.hpp"
#include "polar/io.hpp"
#include "polar/leaning.hpp"
#include "polar/serialize.hpp"

namespace polar::cli {

namespace {

constexpr std::array<std::string_view, 8> kMeasureColumns = {
    "bc", "dip_stat", "dip_pvalue", "dfu_raw", "dfu_display", "a_raw", "a_display", "balance"};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::vector<std::string> header_cells(const BatchOptions& options) {
  std::vector<std::string> cells{"group_id"};
  for (auto f : kReportFields) cells.emplace_back(f);
  cells.insert(cells.end(), {"peak_count", "skipped_reason", "error"});
  cells.insert(cells.end(), options.meta_columns.begin(), options.meta_columns.end());
  return cells;
}

std::vector<std::string> meta_cells(const BatchRow& row, const BatchOptions& options) {
  const auto it = options.meta.find(row.group_id);
  std::vector<std::string> cells(options.meta_columns.size());
  if (it != options.meta.end()) {
    for (std::size_t i = 0; i < cells.size() && i < it->second.size(); ++i) cells[i] = it->second[i];
  }
  return cells;
}

void write_header(std::ostream& out, const BatchOptions& options) {
  if (options.format == Format::Csv) {
    if (options.stamp) out << "# polar batch generated " << utc_timestamp() << '\n';
    out << csv_join(header_cells(options)) << '\n';
  } else if (options.stamp) {
    out << nlohmann::ordered_json{{"generated", utc_timestamp()}}.dump() << '\n';
  }
}

void write_row(std::ostream& out, const BatchRow& row, const BatchOptions& options) {
  if (options.format == Format::Csv) {
    std::vector<std::string> cells{row.group_id};
    if (row.report) {
      const auto r = report_cells(*row.report);
      cells.insert(cells.end(), r.begin(), r.end());
    } else {
      cells.push_back(std::to_string(row.n));
      cells.push_back(std::to_string(options.report.bins));
      cells.resize(cells.size() + kReportFields.size() - 2);
    }
    cells.push_back(row.peak_count ? std::to_string(*row.peak_count) : std::string());
    cells.push_back(row.skipped_reason.value_or(""));
    cells.push_back(row.error.value_or(""));
    const auto meta = meta_cells(row, options);
    cells.insert(cells.end(), meta.begin(), meta.end());
    out << csv_join(cells) << '\n';
    return;
  }

  nlohmann::ordered_json j;
  j["group_id"] = row.group_id;
  if (row.report) {
    const auto fields = report_json(*row.report);
    for (const auto& [key, value] : fields.items()) j[key] = value;
  } else {
    j["n"] = row.n;
    j["K"] = options.report.bins;
    for (std::size_t i = 2; i < kReportFields.size(); ++i) j[std::string(kReportFields[i])] = nullptr;
  }
  j["peak_count"] = row.peak_count ? nlohmann::ordered_json(*row.peak_count) : nlohmann::ordered_json(nullptr);
  j["skipped_reason"] = row.skipped_reason ? nlohmann::ordered_json(*row.skipped_reason) : nlohmann::ordered_json(nullptr);
  j["error"] = row.error ? nlohmann::ordered_json(*row.error) : nlohmann::ordered_json(nullptr);
  const auto meta = meta_cells(row, options);
  for (std::size_t i = 0; i < meta.size(); ++i) j[options.meta_columns[i]] = meta[i];
  out << j.dump() << '\n';
}

void tally(BatchSummary& summary, const BatchRow& row) {
  ++summary.processed;
  if (row.skipped_reason) ++summary.skipped;
  if (row.error) ++summary.errored;
}

std::string first_content_line(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos != std::string::npos && line[pos] != '#') return line;
  }
  return {};
}

bool has_column(const std::vector<std::string>& header, std::string_view name) {
  return std::any_of(header.begin(), header.end(), [&](const std::string& h) {
    const auto a = h.find_first_not_of(" \t");
    const auto b = h.find_last_not_of(" \t\r");
    return a != std::string::npos && std::string_view(h).substr(a, b - a + 1) == name;
  });
}

std::vector<GroupInput> grouped_csv(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> group_col, score_col;
  std::map<std::string, std::vector<double>> scores;
  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    const auto fields = split_csv_line(line);
    if (!fields) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unterminated quote");
    if (!group_col) {
      for (std::size_t i = 0; i < fields->size(); ++i) {
        if (has_column({(*fields)[i]}, "group_id")) group_col = i;
        if (has_column({(*fields)[i]}, "score")) score_col = i;
      }
      if (!group_col || !score_col) throw Error(ErrorCode::Parse, "grouped CSV needs group_id and score columns");
      continue;
    }
    const auto need = std::max(*group_col, *score_col);
    const auto value = fields->size() > need ? parse_double((*fields)[*score_col]) : std::nullopt;
    if (!value) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": cannot parse score");
    }
    scores[(*fields)[*group_col]].push_back(*value);
  }
  std::vector<GroupInput> groups;
  for (auto& [id, values] : scores) {
    GroupInput g{id, std::nullopt, {}};
    try {
      g.sample = make_sample(std::move(values));
    } catch (const Error& e) {
      g.load_error = e.what();
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace

std::uint64_t group_seed(std::uint64_t base, const std::string& group_id) {
  return splitmix64(base ^ fnv1a(group_id));
}

BatchRow process_group(const GroupInput& group, const BatchOptions& options) {
  BatchRow row;
  row.group_id = group.group_id;
  if (!group.sample) {
    row.error = group.load_error.empty() ? "no sample" : group.load_error;
    return row;
  }
  const auto& sample = *group.sample;
  row.n = sample.size();

  try {
    auto report_options = options.report;
    report_options.seed = group_seed(options.report.seed, group.group_id);
    row.report = full_report(sample, report_options);
  } catch (const Error& e) {
    row.error = e.what();
    return row;
  }

  if (sample.size() < options.bursts.min_users) {
    row.skipped_reason = "min_users";
    return row;
  }
  try {
    const auto modes = count_modes(sample, options.bursts);
    if (modes.skipped) row.skipped_reason = *modes.skipped;
    row.peak_count = modes.peak_count;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

BatchSummary run_batch(std::vector<GroupInput> groups, const BatchOptions& options, std::ostream& out) {
  std::stable_sort(groups.begin(), groups.end(),
                   [](const GroupInput& a, const GroupInput& b) { return a.group_id < b.group_id; });
  write_header(out, options);

  BatchSummary summary;
  const std::size_t workers = std::min(std::max<std::size_t>(options.threads, 1), groups.size());
  if (workers <= 1) {
    for (const auto& g : groups) {
      const auto row = process_group(g, options);
      write_row(out, row, options);
      tally(summary, row);
    }
    return summary;
  }

  std::vector<std::optional<BatchRow>> slots(groups.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < groups.size(); i = next++) {
        auto row = process_group(groups[i], options);
        {
          std::lock_guard lock(mutex);
          slots[i] = std::move(row);
        }
        ready.notify_all();
      }
    });
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    BatchRow row;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[i].has_value(); });
      row = std::move(*slots[i]);
      slots[i].reset();
    }
    write_row(out, row, options);
    tally(summary, row);
  }
  return summary;
}

CorrelationReport correlate_batch(std::istream& in) {
  std::vector<double> peaks;
  std::map<std::string, std::vector<std::pair<double, double>>> pairs;
  std::optional<std::vector<std::string>> header;
  std::string line;
  std::size_t line_no = 0;

  auto record = [&](double peak, const std::string& measure, std::optional<double> value) {
    if (value) pairs[measure].emplace_back(peak, *value);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;

    if (line[pos] == '{') {
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": invalid JSON");
      if (!j.contains("group_id")) continue;
      if (!j.contains("peak_count") || !j["peak_count"].is_number()) continue;
      const double peak = j["peak_count"].get<double>();
      peaks.push_back(peak);
      for (auto m : kMeasureColumns) {
        const std::string key(m);
        if (j.contains(key) && j[key].is_number()) record(peak, key, j[key].get<double>());
      }
      continue;
    }

    const auto fields = split_csv_line(line);
    if (!fields) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unterminated quote");
    if (!header) {
      header = *fields;
      if (!has_column(*header, "peak_count")) throw Error(ErrorCode::Parse, "batch file has no peak_count column");
      continue;
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header->size() && i < fields->size(); ++i) row[(*header)[i]] = (*fields)[i];
    const auto peak = parse_double(row["peak_count"]);
    if (!peak) continue;
    peaks.push_back(*peak);
    for (auto m : kMeasureColumns) {
      const std::string key(m);
      const auto it = row.find(key);
      if (it != row.end()) record(*peak, key, parse_double(it->second));
    }
  }

  if (peaks.size() < 3) {
    throw Error(ErrorCode::TooFewRows, "need at least 3 rows with peak_count, found " + std::to_string(peaks.size()));
  }
  CorrelationReport report;
  report.rows = peaks.size();
  for (auto m : kMeasureColumns) {
    const std::string key(m);
    std::vector<double> x, y;
    for (const auto& [peak, value] : pairs[key]) {
      x.push_back(peak);
      y.push_back(value);
    }
    report.pairs.push_back({key, spearman(x, y), x.size()});
  }
  return report;
}

std::vector<GroupInput> load_groups(const std::string& path, std::size_t activity_threshold,
                                    std::size_t min_group_users, std::ostream& err) {
  namespace fs = std::filesystem;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<GroupInput> groups;
    for (const auto& f : files) {
      GroupInput g{f.stem().string(), std::nullopt, {}};
      try {
        g.sample = read_sample_file(f.string());
      } catch (const Error& e) {
        g.load_error = e.what();
      }
      groups.push_back(std::move(g));
    }
    return groups;
  }

  const auto header = split_csv_line(first_content_line(path)).value_or(std::vector<std::string>{});
  if (has_column(header, "user_id")) {
    std::ifstream in(path);
    CommentCorpus corpus;
    const auto summary = read_comment_csv(in, [&](const CommentRecord& r) { corpus.add(r); });
    err << "ingested " << summary.rows << " rows, " << summary.malformed << " malformed";
    if (!summary.malformed_lines.empty()) {
      err << " (lines";
      for (auto l : summary.malformed_lines) err << ' ' << l;
      err << (summary.malformed > summary.malformed_lines.size() ? " ...)" : ")");
    }
    err << '\n';
    std::vector<GroupInput> groups;
    for (auto& g : corpus.group_vectors(activity_threshold, min_group_users)) {
      groups.push_back({g.group_id, std::move(g.sample), {}});
    }
    return groups;
  }
  if (has_column(header, "group_id") && has_column(header, "score")) return grouped_csv(path);
  throw Error(ErrorCode::Parse, "'" + path + "' is neither a comment CSV, a grouped CSV nor a directory");
}

}  // namespace polar::cli
