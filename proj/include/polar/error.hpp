#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polar {

enum class ErrorCode {
  EmptyInput,
  OutOfRange,
  BadBinCount,
  TooFewPoints,
  DegenerateSample,
  BadBootstrapCount,
  EmptyHistogram,
  AllZeroScores,
  DedupFailure,
  TooFewEvents,
  BadParams,
  MalformedRecord,
  TooFewRows,
  Io,
  Parse,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Domain error carrying a machine-readable code; the CLI maps every Error
/// to the "data error" exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polar
