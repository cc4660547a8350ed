#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vwstat {

enum class ErrorCode {
  NonConvergence,
  InvalidDimension,
  DimensionMismatch,
  DegenerateConfig,
  OutsideChart,
  NonUniqueMean,
  NonUniqueAntimean,
  FocalSample,
  SingularAnticovariance,
  DomainError,
  AllResamplesDegenerate,
  TooManyDegenerateResamples,
  ChartFailure,
  ParseError,
  InconsistentColumns,
  IoError,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Process exit code for an error: 2 statistical degeneracy, 3 IO/parse, 4 invalid flags.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<double> values = {})
      : std::runtime_error(message), code_(code), values_(std::move(values)) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

  // Attached numeric context, e.g. the tied eigenvalue cluster.
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  ErrorCode code_;
  std::vector<double> values_;
};

template <ErrorCode C>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& message, std::vector<double> values = {})
      : Error(C, message, std::move(values)) {}
};

using NonConvergence = TypedError<ErrorCode::NonConvergence>;
using InvalidDimension = TypedError<ErrorCode::InvalidDimension>;
using DimensionMismatch = TypedError<ErrorCode::DimensionMismatch>;
using DegenerateConfig = TypedError<ErrorCode::DegenerateConfig>;
using OutsideChart = TypedError<ErrorCode::OutsideChart>;
using NonUniqueMean = TypedError<ErrorCode::NonUniqueMean>;
using NonUniqueAntimean = TypedError<ErrorCode::NonUniqueAntimean>;
using FocalSample = TypedError<ErrorCode::FocalSample>;
using SingularAnticovariance = TypedError<ErrorCode::SingularAnticovariance>;
using DomainError = TypedError<ErrorCode::DomainError>;
using AllResamplesDegenerate = TypedError<ErrorCode::AllResamplesDegenerate>;
using TooManyDegenerateResamples = TypedError<ErrorCode::TooManyDegenerateResamples>;
using ChartFailure = TypedError<ErrorCode::ChartFailure>;
using ParseError = TypedError<ErrorCode::ParseError>;
using InconsistentColumns = TypedError<ErrorCode::InconsistentColumns>;
using IoError = TypedError<ErrorCode::IoError>;
using InvalidArgument = TypedError<ErrorCode::InvalidArgument>;

}  // namespace vwstat
