#include "panelkit/errors.hpp"

namespace panelkit {

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
      return ErrorCategory::Config;
    case ErrorCode::DuplicateKey:
    case ErrorCode::MissingColumn:
    case ErrorCode::ParseError:
    case ErrorCode::UnknownVariable:
    case ErrorCode::EmptyDesign:
    case ErrorCode::NameCollision:
    case ErrorCode::UnknownYear:
    case ErrorCode::ZeroDenominator:
      return ErrorCategory::Data;
    case ErrorCode::IoError:
      return ErrorCategory::Io;
    case ErrorCode::ZeroVariance:
    case ErrorCode::TooShort:
    case ErrorCode::RankDeficient:
    case ErrorCode::InsufficientRows:
    case ErrorCode::ConstantWithinGroups:
    case ErrorCode::SingleGroup:
    case ErrorCode::FoldTooSmall:
    case ErrorCode::ComponentOutOfRange:
      return ErrorCategory::Numeric;
    case ErrorCode::Internal:
      return ErrorCategory::Internal;
  }
  return ErrorCategory::Internal;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::EmptyDesign: return "EmptyDesign";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::UnknownYear: return "UnknownYear";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InsufficientRows: return "InsufficientRows";
    case ErrorCode::ConstantWithinGroups: return "ConstantWithinGroups";
    case ErrorCode::SingleGroup: return "SingleGroup";
    case ErrorCode::FoldTooSmall: return "FoldTooSmall";
    case ErrorCode::ComponentOutOfRange: return "ComponentOutOfRange";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace panelkit
