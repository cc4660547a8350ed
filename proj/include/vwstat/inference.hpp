#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vwstat/frechet.hpp"

namespace vwstat {

/// Sample anticovariance of the tangential coordinates of the sample antimean,
/// expressed in the frame of the remaining moment-matrix eigenvectors.
template <class Scalar>
struct AnticovarianceMatrix {
  SelfAdjointMatrix<Scalar> matrix;  // d x d, d = N - 1
  Matrix<Scalar> pseudo;             // d x d symmetric companion E[c c^T]; equals matrix for axes
  Matrix<Scalar> basis;              // N x d columns m_2 ... m_N
  Vector<Scalar> pole;               // m_1, the phase reference of the tangential coordinates
  Vector<Real> eigenvalues;          // moment-matrix spectrum, ascending
  std::size_t sample_size;

  Eigen::Index dim() const noexcept { return matrix.dim(); }
};

struct TStatistic {
  Real value;
  int dof;
};

/// Anticovariance from an explicit eigen-system:
///   S_ab = (l_a - l_1)^-1 (l_b - l_1)^-1 sum_r w_r <m_a, x_r> conj(<m_b, x_r>) |<m_1, x_r>|^2.
/// Throws FocalSample when l_2 - l_1 <= gap_tol.
template <class Scalar>
AnticovarianceMatrix<Scalar> anticovariance(const Sample<Scalar>& s,
                                            const SpectralDecomposition<Scalar>& spectral,
                                            Real gap_tol = kDefaultGapTol);

template <class Scalar>
AnticovarianceMatrix<Scalar> anticovariance(const Sample<Scalar>& s, Real gap_tol = kDefaultGapTol);

AnticovarianceMatrix<Real> anticovariance_real(const AxialSample& s, Real gap_tol = kDefaultGapTol);
AnticovarianceMatrix<Complex> anticovariance_complex(const ShapeSample& s,
                                                     Real gap_tol = kDefaultGapTol);

/// Degrees of freedom of the limiting chi-square law: d for axes, 2d for shapes.
template <class Scalar>
int tangent_dof(Eigen::Index tangent_dim) noexcept {
  return static_cast<int>(is_complex_v<Scalar> ? 2 * tangent_dim : tangent_dim);
}

inline constexpr Real kAnticovRelativeCutoff = 1e-12;

/// T = n c^T S_nu^-1 c for axes, with c_a = <nu_a, m>, where (nu_a) is an orthonormal
/// basis of the complement of the hypothesis and S_nu is the anticovariance carried
/// into that basis by U = [nu_a]* [m_b]. For shapes the quadratic form is taken over the
/// 2d real components of c, using S_nu together with the carried pseudo-anticovariance
/// U P U^T. When no basis is supplied, a Householder completion of the hypothesis is
/// used; T does not depend on that choice.
template <class Scalar>
TStatistic t_statistic(const ExtremizerResult<Scalar>& center,
                       const AnticovarianceMatrix<Scalar>& anticov,
                       const ProjectivePoint<Scalar>& hypothesis,
                       const std::optional<Matrix<Scalar>>& hypothesis_basis = std::nullopt);

enum class RegionMethod { Asymptotic, PivotalBootstrap };

const char* to_string(RegionMethod method) noexcept;

template <class Scalar>
struct ConfidenceRegion {
  ExtremizerResult<Scalar> center;
  AnticovarianceMatrix<Scalar> anticov;
  Real level;
  Real threshold;
  int dof;
  RegionMethod method;

  TStatistic statistic(const ProjectivePoint<Scalar>& candidate) const {
    return t_statistic(center, anticov, candidate);
  }
  bool contains(const ProjectivePoint<Scalar>& candidate) const {
    return statistic(candidate).value <= threshold;
  }
};

/// Large-sample region {nu : T(m, nu) <= chi2_{dof}(level)}.
template <class Scalar>
ConfidenceRegion<Scalar> asymptotic_region(const Sample<Scalar>& s, Real level,
                                           Real gap_tol = kDefaultGapTol);

struct BootstrapOptions {
  unsigned threads = 1;
  Real gap_tol = kDefaultGapTol;
};

template <class Scalar>
struct BootstrapReplicate {
  std::optional<ProjectivePoint<Scalar>> extremizer;
  std::optional<Real> t_value;
  std::string skip_reason;

  bool skipped() const noexcept { return !extremizer.has_value(); }
};

template <class Scalar>
struct BootstrapDistribution {
  std::size_t resample_count;
  std::uint64_t seed;
  ExtremeKind kind;
  std::vector<BootstrapReplicate<Scalar>> replicates;

  std::size_t skipped() const;
  std::vector<ProjectivePoint<Scalar>> extremizers() const;
};

/// Resample indices for replicate `index` of a bootstrap run; a pure function of
/// (seed, index, n) so results do not depend on scheduling.
std::vector<std::size_t> resample_indices(std::uint64_t seed, std::size_t index, std::size_t n);

template <class Scalar>
Sample<Scalar> resample(const Sample<Scalar>& s, const std::vector<std::size_t>& indices);

/// B with-replacement resamples, each reduced to its extremizer of the requested kind.
/// Resamples with a tied extremal eigenvalue are skipped and counted.
template <class Scalar>
BootstrapDistribution<Scalar> bootstrap_nonpivotal(const Sample<Scalar>& s, std::size_t resamples,
                                                   std::uint64_t seed, ExtremeKind kind,
                                                   const BootstrapOptions& options = {});

/// Mean chord distance from the non-skipped bootstrap extremizers to `reference`.
template <class Scalar>
Real bootstrap_spread(const BootstrapDistribution<Scalar>& boot,
                      const ProjectivePoint<Scalar>& reference);

template <class Scalar>
struct PivotalBootstrap {
  ConfidenceRegion<Scalar> region;
  BootstrapDistribution<Scalar> distribution;
};

/// Studentized bootstrap of T([m]*, [m]); threshold is the type-1 empirical quantile
/// at `level`. Throws TooManyDegenerateResamples when more than 10% are skipped.
template <class Scalar>
PivotalBootstrap<Scalar> bootstrap_pivotal(const Sample<Scalar>& s, std::size_t resamples,
                                           std::uint64_t seed, Real level,
                                           const BootstrapOptions& options = {});

/// Order statistic at index ceil(prob * n) (1-based) of the values.
Real type1_quantile(std::vector<Real> values, Real prob);

struct AffineRectangle {
  Complex lower;  // (lo_re, lo_im)
  Complex upper;  // (hi_re, hi_im)
};

struct AffineIntervals {
  std::vector<AffineRectangle> rectangles;
  std::size_t used;
  std::size_t dropped;
};

/// Bonferroni-simultaneous rectangles for the affine coordinates of the bootstrap
/// extremizers: each of the 2(k-2) real intervals has level 1 - beta / (2(k-2)).
AffineIntervals simultaneous_affine_cis(const BootstrapDistribution<Complex>& boot, Real level);

/// "w1: [-0.1804 - 0.1808i   0.0549 + 0.1365i]"
std::string format_affine_rectangle(std::size_t index, const AffineRectangle& rect);

}  // namespace vwstat
