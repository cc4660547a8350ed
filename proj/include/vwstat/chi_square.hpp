#pragma once

#include "vwstat/linalg.hpp"

namespace vwstat {

/// Regularized lower incomplete gamma P(a, x).
Real regularized_gamma_p(Real a, Real x);

Real chi2_cdf(int dof, Real x);

/// Inverse chi-square CDF. Throws DomainError unless dof >= 1 and prob in [0, 1).
Real chi2_quantile(int dof, Real prob);

}  // namespace vwstat
