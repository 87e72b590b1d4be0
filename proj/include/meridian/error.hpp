#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meridian {

enum class Errc {
  SizeMismatch,
  InvalidInitialState,
  StepSizeNonpositive,
  IntervalOutsideDomain,
  ToleranceNotReached,
  DomainViolation,
  OutOfDomain,
  InvalidCurve,
  MinimalPoint,
  NonpositiveProfile,
  EmptyInterval,
  RadicandNegative,
  IntegrationStopped,
  ParameterConflict,
  MuVanishes,
  ChartDomain,
  FieldAuditFailed,
  ConfigError,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::InvalidInitialState: return "InvalidInitialState";
    case Errc::StepSizeNonpositive: return "StepSizeNonpositive";
    case Errc::IntervalOutsideDomain: return "IntervalOutsideDomain";
    case Errc::ToleranceNotReached: return "ToleranceNotReached";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::InvalidCurve: return "InvalidCurve";
    case Errc::MinimalPoint: return "MinimalPoint";
    case Errc::NonpositiveProfile: return "NonpositiveProfile";
    case Errc::EmptyInterval: return "EmptyInterval";
    case Errc::RadicandNegative: return "RadicandNegative";
    case Errc::IntegrationStopped: return "IntegrationStopped";
    case Errc::ParameterConflict: return "ParameterConflict";
    case Errc::MuVanishes: return "MuVanishes";
    case Errc::ChartDomain: return "ChartDomain";
    case Errc::FieldAuditFailed: return "FieldAuditFailed";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace meridian
