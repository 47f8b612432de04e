#include "nslit/error.hpp"

namespace nslit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::EmptySlits: return "EmptySlits";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::MismatchedParams: return "MismatchedParams";
    case ErrorCode::EmptyChannels: return "EmptyChannels";
    case ErrorCode::VanishingDensity: return "VanishingDensity";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::NotAGrating: return "NotAGrating";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::PaletteMismatch: return "PaletteMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t line,
             std::optional<std::size_t> column)
    : std::runtime_error(message), code_(code), line_(line), column_(column) {}

std::string Error::describe() const {
  std::string out = "error: ";
  out += to_string(code_);
  if (line_) {
    out += " line " + std::to_string(*line_);
    if (column_) out += ":" + std::to_string(*column_);
  }
  out += ": ";
  out += what();
  return out;
}

}  // namespace nslit
