#include "polar/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "polar/error.hpp"

namespace polar {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

std::optional<std::vector<std::string>> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(field));
  return fields;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<double> read_scores(std::istream& in, const std::optional<std::string>& column) {
  std::vector<double> values;
  std::optional<std::size_t> col_index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::string_view cell = body;
    std::vector<std::string> fields;
    if (column) {
      auto split = split_csv_line(body);
      if (!split) throw Error(ErrorCode::Parse, line_error(line_no, "unterminated quote"));
      fields = std::move(*split);
      if (!col_index) {
        const auto it = std::find_if(fields.begin(), fields.end(),
                                     [&](const std::string& f) { return trim(f) == *column; });
        if (it == fields.end()) {
          throw Error(ErrorCode::Parse, line_error(line_no, "no column named '" + *column + "'"));
        }
        col_index = static_cast<std::size_t>(it - fields.begin());
        continue;
      }
      if (*col_index >= fields.size()) {
        throw Error(ErrorCode::Parse, line_error(line_no, "missing column '" + *column + "'"));
      }
      cell = fields[*col_index];
    }

    const auto value = parse_double(cell);
    if (!value) {
      throw Error(ErrorCode::Parse,
                  line_error(line_no, "cannot parse '" + std::string(trim(cell)) + "' as a number"));
    }
    if (*value < -1.0 || *value > 1.0) {
      throw Error(ErrorCode::OutOfRange,
                  line_error(line_no, "score out of range [-1, 1]: " + format_double(*value)));
    }
    values.push_back(*value);
  }
  return values;
}

ScoreSample read_sample_file(const std::string& path, const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return make_sample(read_scores(in, column));
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

void write_sample(std::ostream& out, const ScoreSample& sample) {
  for (double v : sample.scores()) out << format_double(v) << '\n';
}

}  // namespace polar
