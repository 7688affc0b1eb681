#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcplate {

enum class ErrorCode {
  InvalidArgument,
  InvalidInterval,
  NonConvergence,
  NonFiniteIntegrand,
  OutOfSpan,
  ContactViolation,
  PfaViolation,
  NonPositiveGap,
  NonPositiveThickness,
  NonNegativeEnergy,
  ZeroReference,
  NotFound,
  ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::OutOfSpan: return "OutOfSpan";
    case ErrorCode::ContactViolation: return "ContactViolation";
    case ErrorCode::PfaViolation: return "PfaViolation";
    case ErrorCode::NonPositiveGap: return "NonPositiveGap";
    case ErrorCode::NonPositiveThickness: return "NonPositiveThickness";
    case ErrorCode::NonNegativeEnergy: return "NonNegativeEnergy";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arcplate
