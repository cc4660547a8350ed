#include "vwstat/errors.hpp"

namespace vwstat {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateConfig: return "DegenerateConfig";
    case ErrorCode::OutsideChart: return "OutsideChart";
    case ErrorCode::NonUniqueMean: return "NonUniqueMean";
    case ErrorCode::NonUniqueAntimean: return "NonUniqueAntimean";
    case ErrorCode::FocalSample: return "FocalSample";
    case ErrorCode::SingularAnticovariance: return "SingularAnticovariance";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::AllResamplesDegenerate: return "AllResamplesDegenerate";
    case ErrorCode::TooManyDegenerateResamples: return "TooManyDegenerateResamples";
    case ErrorCode::ChartFailure: return "ChartFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InconsistentColumns: return "InconsistentColumns";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InconsistentColumns:
    case ErrorCode::IoError:
    case ErrorCode::InvalidDimension:
    case ErrorCode::DimensionMismatch:
      return 3;
    case ErrorCode::InvalidArgument:
    case ErrorCode::DomainError:
      return 4;
    default:
      return 2;
  }
}

}  // namespace vwstat
