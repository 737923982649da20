#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "polar/cli.hpp"
#include "polar/error.hpp"
#include "polar/io.hpp"
#include "polar/leaning.hpp"
#include "polar/serialize.hpp"
#include "polar/synth.hpp"

namespace polar::cli {

namespace {

struct Settings {
  std::size_t bins = 8;
  std::uint64_t seed = 1;
  std::uint32_t bootstrap = 2000;
  std::string format = "csv";
  std::string out;
  std::optional<std::string> column;
  BurstParams bursts;
  double bc_threshold = 0.55;
  bool classify = false;

  std::string input;
  std::string panel;
  std::size_t n = 10000;
  std::size_t activity_threshold = 5;
  std::size_t min_group_users = 5;
  bool groups = false;
  bool no_stamp = false;
  std::size_t threads = 0;
  std::string group_meta;

  [[nodiscard]] Format output_format() const { return format == "jsonl" ? Format::JsonLines : Format::Csv; }
  [[nodiscard]] ReportOptions report() const { return {bins, bootstrap, seed}; }
};

// Owns the --out stream, or forwards to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out_ = file_.get();
  }
  std::ostream& get() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return in;
}

void cmd_synth(const Settings& s, std::ostream& out) {
  const auto panel = parse_panel(s.panel);
  if (!panel) throw Error(ErrorCode::BadParams, "unknown panel '" + s.panel + "' (expected A-F)");
  Sink sink(s.out, out);
  write_sample(sink.get(), gen_panel(*panel, s.n, s.seed));
}

void cmd_measure(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto sample = read_sample_file(s.input, s.column);
  const auto report = full_report(sample, s.report());
  for (const auto& [name, reason] : report.absent) err << "note: " << name << " unavailable: " << reason << '\n';

  const bool bimodal = report.bc && *report.bc > s.bc_threshold;
  Sink sink(s.out, out);
  if (s.output_format() == Format::JsonLines) {
    auto j = report_json(report);
    if (s.classify) j["bc_bimodal"] = report.bc ? nlohmann::ordered_json(bimodal) : nlohmann::ordered_json(nullptr);
    sink.get() << j.dump() << '\n';
    return;
  }
  std::vector<std::string> header(kReportFields.begin(), kReportFields.end());
  auto cells = report_cells(report);
  if (s.classify) {
    header.emplace_back("bc_bimodal");
    cells.emplace_back(report.bc ? (bimodal ? "1" : "0") : "");
  }
  sink.get() << csv_join(header) << '\n' << csv_join(cells) << '\n';
}

void cmd_infer(const Settings& s, std::ostream& out, std::ostream& err) {
  auto in = open_input(s.input);
  CommentCorpus corpus;
  const auto summary = read_comment_csv(in, [&](const CommentRecord& r) { corpus.add(r); });
  err << "ingested " << summary.rows << " rows, " << summary.malformed << " malformed\n";

  Sink sink(s.out, out);
  auto& o = sink.get();
  const bool json = s.output_format() == Format::JsonLines;
  if (s.groups) {
    if (!json) o << "group_id,score\n";
    for (const auto& g : corpus.group_vectors(s.activity_threshold, s.min_group_users)) {
      if (json) {
        nlohmann::ordered_json j{{"group_id", g.group_id},
                                 {"unique_active_users", g.unique_active_users},
                                 {"scores", g.sample.scores()}};
        o << j.dump() << '\n';
        continue;
      }
      for (double v : g.sample.scores()) o << csv_join({g.group_id, format_double(v)}) << '\n';
    }
    return;
  }
  if (!json) o << "user_id,score,comment_count,active\n";
  for (const auto& u : corpus.user_leanings(s.activity_threshold)) {
    if (json) {
      nlohmann::ordered_json j{{"user_id", u.user_id},
                               {"score", u.score},
                               {"comment_count", u.comment_count},
                               {"active", u.active}};
      o << j.dump() << '\n';
    } else {
      o << csv_join({u.user_id, format_double(u.score), std::to_string(u.comment_count), u.active ? "1" : "0"})
        << '\n';
    }
  }
}

void load_meta(const std::string& path, BatchOptions& options) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (!fields || fields->empty()) {
      throw Error(ErrorCode::Parse, path + " line " + std::to_string(line_no) + ": malformed");
    }
    if (!have_header) {
      options.meta_columns.assign(fields->begin() + 1, fields->end());
      have_header = true;
      continue;
    }
    options.meta[(*fields)[0]] = std::vector<std::string>(fields->begin() + 1, fields->end());
  }
}

void cmd_batch(const Settings& s, std::ostream& out, std::ostream& err) {
  s.bursts.validate();
  BatchOptions options;
  options.report = s.report();
  options.bursts = s.bursts;
  options.format = s.output_format();
  options.stamp = !s.no_stamp;
  options.threads = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
  if (!s.group_meta.empty()) load_meta(s.group_meta, options);

  auto groups = load_groups(s.input, s.activity_threshold, s.min_group_users, err);
  Sink sink(s.out, out);
  const auto summary = run_batch(std::move(groups), options, sink.get());
  err << "processed " << summary.processed << ", skipped " << summary.skipped << ", errored "
      << summary.errored << '\n';
}

void cmd_bursts(const Settings& s, std::ostream& out) {
  s.bursts.validate();
  const auto sample = read_sample_file(s.input, s.column);
  const auto analysis = count_modes(sample, s.bursts);
  Sink sink(s.out, out);
  if (s.output_format() == Format::JsonLines) {
    sink.get() << burst_json(analysis, s.bursts).dump() << '\n';
    return;
  }
  sink.get() << "level,start,end\n";
  for (const auto& span : analysis.spans) {
    sink.get() << span.level << ',' << format_double(span.start) << ',' << format_double(span.end) << '\n';
  }
}

void cmd_correlate(const Settings& s, std::ostream& out) {
  auto in = open_input(s.input);
  const auto report = correlate_batch(in);
  Sink sink(s.out, out);
  auto& o = sink.get();
  const bool json = s.output_format() == Format::JsonLines;
  if (!json) o << "measure,rho,count\n";
  for (const auto& p : report.pairs) {
    if (json) {
      nlohmann::ordered_json j{{"measure", p.measure}, {"rho", nullptr}, {"count", p.count}, {"rows", report.rows}};
      if (!std::isnan(p.rho)) j["rho"] = p.rho;
      o << j.dump() << '\n';
    } else {
      o << csv_join({p.measure, std::isnan(p.rho) ? "" : format_double(p.rho), std::to_string(p.count)}) << '\n';
    }
  }
}

void add_burst_flags(CLI::App& app, BurstParams& p) {
  const std::string group = "Burst detection";
  app.add_option("--s", p.s, "Rate ratio between automaton levels")->group(group)->capture_default_str();
  app.add_option("--gamma", p.gamma, "Cost of moving up one level")->group(group)->capture_default_str();
  app.add_option("--alpha", p.alpha, "HDI coverage for the merge distance")->group(group)->capture_default_str();
  app.add_option("--k", p.k, "Merge distance as a fraction of the HDI length")->group(group)->capture_default_str();
  app.add_option("--epsilon", p.epsilon, "Offset used to separate tied scores")->group(group)->capture_default_str();
  app.add_option("--rounding-decimals", p.rounding_decimals, "Decimals kept before deduplication")
      ->group(group)
      ->capture_default_str();
  app.add_option("--peak-level", p.peak_level, "Lowest level counted as a peak")->group(group)->capture_default_str();
  app.add_option("--dedup-passes", p.max_dedup_passes, "Give up deduplicating after this many passes")
      ->group(group)
      ->capture_default_str();
  app.add_option("--min-users", p.min_users, "Skip mode counting below this many scores")
      ->group(group)
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Polarization measures and burst-based mode counting for scores in [-1, 1]", "polar"};
  app.set_config("--config", "", "Flat key = value file presetting any flag");
  app.require_subcommand(1);

  app.add_option("-K,--bins", s.bins, "Number of ordinal bins")->capture_default_str()->check(CLI::Range(2, 100000));
  app.add_option("--seed", s.seed, "Random seed")->capture_default_str();
  app.add_option("--bootstrap", s.bootstrap, "Dip bootstrap replicates (0 disables p-values)")->capture_default_str();
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  app.add_option("--out", s.out, "Output file (default stdout)");
  app.add_option("--column", s.column, "CSV column holding the scores");
  app.add_option("--bc-threshold", s.bc_threshold, "BC classification threshold")->capture_default_str();
  app.add_flag("--classify", s.classify, "Add a bc_bimodal column");
  app.add_option("--activity-threshold", s.activity_threshold, "Comments needed for a user to be active")
      ->capture_default_str();
  app.add_option("--min-group-users", s.min_group_users, "Unique active users needed to keep a group")
      ->capture_default_str();
  add_burst_flags(app, s.bursts);

  auto* synth = app.add_subcommand("synth", "Generate a benchmark panel sample");
  synth->add_option("--panel", s.panel, "Panel A-F")->required();
  synth->add_option("-n,--n", s.n, "Sample size")->capture_default_str();

  auto* measure = app.add_subcommand("measure", "Compute every polarization measure for a sample file");
  measure->add_option("input", s.input, "Sample file")->required();

  auto* infer = app.add_subcommand("infer", "Infer user leanings from a comment CSV");
  infer->add_option("input", s.input, "Comment CSV")->required();
  infer->add_flag("--groups", s.groups, "Emit per-group score vectors instead of users");

  auto* batch = app.add_subcommand("batch", "Measure and count modes for every group");
  batch->add_option("input", s.input, "Comment CSV, grouped CSV or directory of sample files")->required();
  batch->add_flag("--no-stamp", s.no_stamp, "Omit the timestamp header line");
  batch->add_option("--threads", s.threads, "Worker threads (0 = all cores)")->capture_default_str();
  batch->add_option("--group-meta", s.group_meta, "CSV joined on group_id (first column)");

  auto* bursts = app.add_subcommand("bursts", "Detect score bursts and count modes");
  bursts->add_option("input", s.input, "Sample file")->required();

  auto* correlate = app.add_subcommand("correlate", "Spearman correlation of measures with peak_count");
  correlate->add_option("input", s.input, "Batch output file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) cmd_synth(s, out);
    else if (*measure) cmd_measure(s, out, err);
    else if (*infer) cmd_infer(s, out, err);
    else if (*batch) cmd_batch(s, out, err);
    else if (*bursts) cmd_bursts(s, out);
    else if (*correlate) cmd_correlate(s, out);
    out.flush();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace polar::cli
