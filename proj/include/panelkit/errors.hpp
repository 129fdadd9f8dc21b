#ifndef PANELKIT_ERRORS_HPP
#define PANELKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace panelkit {

enum class ErrorCode {
  // configuration / usage
  ConfigError,
  // data
  DuplicateKey,
  MissingColumn,
  ParseError,
  UnknownVariable,
  EmptyDesign,
  NameCollision,
  UnknownYear,
  ZeroDenominator,
  IoError,
  // numeric
  ZeroVariance,
  TooShort,
  RankDeficient,
  InsufficientRows,
  ConstantWithinGroups,
  SingleGroup,
  FoldTooSmall,
  ComponentOutOfRange,
  Internal,
};

enum class ErrorCategory { Config, Data, Numeric, Io, Internal };

ErrorCategory error_category(ErrorCode code);
const char* error_code_name(ErrorCode code);

/// Single exception type for the whole library; the code carries the
/// machine-readable kind, what() the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return error_category(code_); }

 private:
  ErrorCode code_;
};

}  // namespace panelkit

#endif
