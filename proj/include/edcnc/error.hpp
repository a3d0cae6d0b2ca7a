#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edcnc {

enum class ErrorCode {
  LengthError,
  ArityError,
  ParseError,
  InvalidArgument,
  SearchExhausted,
  Unsolvable,
  Inconsistent,
  BadMagic,
  BadVersion,
  Truncated,
  Unauthorized,
  UnknownGroup,
  Unrecoverable,
  ConfigError,
  TooLarge,
  DomainError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LengthError: return "LengthError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::BadVersion: return "BadVersion";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::Unauthorized: return "Unauthorized";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::Unrecoverable: return "Unrecoverable";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DomainError: return "DomainError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace edcnc
