#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polar/distributions.hpp"

namespace polar {

/// Splits one CSV line. Double quotes may wrap a field; "" inside a quoted
/// field is a literal quote. Returns nullopt on an unterminated quote.
[[nodiscard]] std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

/// Strict decimal parse ('.' separator, surrounding blanks allowed).
[[nodiscard]] std::optional<double> parse_double(std::string_view text);

/// Reads scores from either plain text (one value per line) or, when column
/// is given, a headed CSV. Blank lines and lines starting with '#' are
/// skipped. Throws Parse with the offending line number, or the sample
/// errors (EmptyInput, OutOfRange).
[[nodiscard]] std::vector<double> read_scores(std::istream& in,
                                              const std::optional<std::string>& column = std::nullopt);

[[nodiscard]] ScoreSample read_sample_file(const std::string& path,
                                           const std::optional<std::string>& column = std::nullopt);

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double value);

void write_sample(std::ostream& out, const ScoreSample& sample);

}  // namespace polar
