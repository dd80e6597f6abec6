#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbit {

enum class ErrorKind {
  NotAState,
  NotADistribution,
  InvalidDims,
  DimensionMismatch,
  IndexMismatch,
  TooLarge,
  WrongDimension,
  RankExceedsBellSpace,
  EnergyOutOfRange,
  EnergyMismatch,
  InfeasibleEnergy,
  NonPositiveTemperature,
  MarginalsNotThermal,
  EnergyNotConserved,
  SpectrumMismatch,
  EqualTemperatures,
  InfeasibleMarginals,
  InvalidMode,
  ParseError,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotADistribution: return "NotADistribution";
    case ErrorKind::InvalidDims: return "InvalidDims";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexMismatch: return "IndexMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::RankExceedsBellSpace: return "RankExceedsBellSpace";
    case ErrorKind::EnergyOutOfRange: return "EnergyOutOfRange";
    case ErrorKind::EnergyMismatch: return "EnergyMismatch";
    case ErrorKind::InfeasibleEnergy: return "InfeasibleEnergy";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::MarginalsNotThermal: return "MarginalsNotThermal";
    case ErrorKind::EnergyNotConserved: return "EnergyNotConserved";
    case ErrorKind::SpectrumMismatch: return "SpectrumMismatch";
    case ErrorKind::EqualTemperatures: return "EqualTemperatures";
    case ErrorKind::InfeasibleMarginals: return "InfeasibleMarginals";
    case ErrorKind::InvalidMode: return "InvalidMode";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error. what() is "<Kind>: <detail>" so the kind name survives to the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orbit
