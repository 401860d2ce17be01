#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expcensus {

enum class ErrorKind {
  NonPositive,
  Domain,
  PrecisionLoss,
  TowerOverflow,
  ZeroParameter,
  InvalidModel,
  NonConvergence,
  ContourZero,
  NonInteger,
  IncompleteCensus,
  ConsistencyError,
  Parse,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::TowerOverflow: return "TowerOverflow";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ContourZero: return "ContourZero";
    case ErrorKind::NonInteger: return "NonInteger";
    case ErrorKind::IncompleteCensus: return "IncompleteCensus";
    case ErrorKind::ConsistencyError: return "ConsistencyError";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Unknown";
}

/// Every computational failure in the library is reported through this type;
/// `kind()` is what the command-line front end prints.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace expcensus
