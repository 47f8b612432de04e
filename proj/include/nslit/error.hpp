#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nslit {

enum class ErrorCode {
  NonPositiveInput,
  NonPositiveSigma,
  NegativeWeight,
  EmptySlits,
  DomainTooSmall,
  BadGrid,
  NegativeTime,
  MismatchedParams,
  EmptyChannels,
  VanishingDensity,
  StabilityViolation,
  LeftDomain,
  NotAGrating,
  SyntaxError,
  UnknownKey,
  IoError,
  PaletteMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library surfaces as an Error carrying a stable code.
/// Parse errors additionally carry the 1-based line (and column, when known)
/// of the offending text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t line,
        std::optional<std::size_t> column = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<std::size_t> column() const noexcept { return column_; }

  /// Single-line, machine-parsable rendering: `error: <Code>[ line L[:C]]: msg`.
  std::string describe() const;

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

}  // namespace nslit
