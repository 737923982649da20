#include <doctest.h>

#include <cmath>
#include <sstream>

#include "polar/error.hpp"
#include "polar/io.hpp"
#include "polar/serialize.hpp"

using namespace polar;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("split_csv_line") {
  CHECK(*split_csv_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(*split_csv_line("\"x, y\",\"say \"\"hi\"\"\"\r") == std::vector<std::string>{"x, y", "say \"hi\""});
  CHECK_FALSE(split_csv_line("\"open"));
}

TEST_CASE("parse_double is strict") {
  CHECK(parse_double(" 0.25 ") == 0.25);
  CHECK(parse_double("+1") == 1.0);
  CHECK(parse_double("-1e-3") == -0.001);
  CHECK_FALSE(parse_double("0,5"));
  CHECK_FALSE(parse_double("1.0x"));
  CHECK_FALSE(parse_double(""));
  CHECK_FALSE(parse_double("nan"));
  CHECK_FALSE(parse_double("inf"));
}

TEST_CASE("read_scores plain text") {
  std::istringstream in("# header comment\n0.5\n\n-0.25\n  1\n");
  CHECK(read_scores(in) == std::vector<double>{0.5, -0.25, 1.0});

  std::istringstream bad("0.1\n0.2\nabc\n");
  CHECK(message_of([&] { (void)read_scores(bad); }).find("line 3") == 0);

  std::istringstream out_of_range("0.1\n1.5\n");
  CHECK(code_of([&] { (void)read_scores(out_of_range); }) == ErrorCode::OutOfRange);
}

TEST_CASE("read_scores CSV column") {
  std::istringstream in("id,score,note\n1,0.5,x\n2,\"-0.75\",\"a, b\"\n");
  CHECK(read_scores(in, std::string("score")) == std::vector<double>{0.5, -0.75});

  std::istringstream missing("id,value\n1,0.5\n");
  CHECK(message_of([&] { (void)read_scores(missing, std::string("score")); }).find("no column") !=
        std::string::npos);

  std::istringstream short_row("id,score\n1\n");
  CHECK(code_of([&] { (void)read_scores(short_row, std::string("score")); }) == ErrorCode::Parse);
}

TEST_CASE("sample files") {
  CHECK(code_of([] { (void)read_sample_file("/nonexistent/file.txt"); }) == ErrorCode::Io);
  std::istringstream empty("# nothing\n");
  CHECK(read_scores(empty).empty());
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, -0.3333333333333333, 1.0, 0.0, 1e-17, 0.5001}) {
    CHECK(*parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  std::ostringstream out;
  write_sample(out, make_sample(std::vector<double>{0.5, -0.25}));
  CHECK(out.str() == "-0.25\n0.5\n");
}

TEST_CASE("report serialization") {
  MeasureReport r;
  r.n = 10;
  r.bins = 8;
  r.bc = 0.5;
  r.dfu_raw = 0.25;
  r.dfu_display = 0.5;
  const auto cells = report_cells(r);
  REQUIRE(cells.size() == kReportFields.size());
  CHECK(cells[0] == "10");
  CHECK(cells[1] == "8");
  CHECK(cells[2] == "0.5");
  CHECK(cells[3].empty());
  const auto j = report_json(r);
  CHECK(j["dip_stat"].is_null());
  CHECK(j["dfu_display"] == 0.5);
  std::size_t i = 0;
  for (const auto& [key, value] : j.items()) CHECK(key == kReportFields[i++]);
}

TEST_CASE("burst serialization") {
  BurstAnalysis a;
  a.phi = 0.01;
  a.spans = {{3, -0.5, -0.4}};
  a.peak_count = 1;
  const auto j = burst_json(a, BurstParams{});
  CHECK(j["params"]["gamma"] == 0.9);
  CHECK(j["spans"][0]["level"] == 3);
  CHECK(j["peak_count"] == 1);
  CHECK(j["skipped"] == false);
  CHECK_FALSE(j.contains("skipped_reason"));

  BurstAnalysis skipped;
  skipped.skipped = "min_users";
  const auto s = burst_json(skipped, BurstParams{});
  CHECK(s["skipped"] == true);
  CHECK(s["skipped_reason"] == "min_users");
  CHECK(s["peak_count"].is_null());
}

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"x\"") == "\"say \"\"x\"\"\"");
  CHECK(csv_join({"a", "b,c", ""}) == "a,\"b,c\",");
  CHECK(*split_csv_line(csv_join({"a", "b,c", "q\"q"})) == std::vector<std::string>{"a", "b,c", "q\"q"});
}

}  // TEST_SUITE
