#pragma once

#include <optional>
#include <vector>

#include "vwstat/linalg.hpp"
#include "vwstat/shape_geometry.hpp"

namespace vwstat {

inline constexpr Real kDefaultGapTol = 1e-9;

/// Weighted empirical distribution on a projective space. Uniform weights by default.
template <class Scalar>
class Sample {
 public:
  explicit Sample(std::vector<ProjectivePoint<Scalar>> points);
  Sample(std::vector<ProjectivePoint<Scalar>> points, std::vector<Real> weights);

  std::size_t size() const noexcept { return points_.size(); }
  Eigen::Index dim() const noexcept { return points_.front().dim(); }
  const std::vector<ProjectivePoint<Scalar>>& points() const noexcept { return points_; }
  const std::vector<Real>& weights() const noexcept { return weights_; }
  const ProjectivePoint<Scalar>& operator[](std::size_t i) const { return points_[i]; }

  /// Applies [x] -> [T x] to every point, keeping weights.
  Sample transformed(const Matrix<Scalar>& t) const;

 private:
  std::vector<ProjectivePoint<Scalar>> points_;
  std::vector<Real> weights_;
};

using AxialSample = Sample<Real>;
using ShapeSample = Sample<Complex>;

template <class Scalar>
struct MomentMatrix {
  SelfAdjointMatrix<Scalar> matrix;
  SpectralDecomposition<Scalar> spectral;
};

enum class ExtremeKind { Mean, Antimean };

const char* to_string(ExtremeKind kind) noexcept;

template <class Scalar>
struct ExtremizerResult {
  ProjectivePoint<Scalar> point;
  Real eigenvalue;
  Real gap;
  Real frechet_value;
  ExtremeKind kind;
  std::size_t sample_size;
};

struct NonfocalityReport {
  Real lambda_min;
  Real lambda_max;
  Real gap_bottom;
  Real gap_top;
  int multiplicity_bottom;
  int multiplicity_top;
  bool alpha_vw_nonfocal;  // simple, positive smallest eigenvalue: unique antimean
  bool vw_nonfocal;        // simple largest eigenvalue: unique mean
};

/// Sum of w_r x_r x_r*, accumulated over a fixed pairwise tree.
template <class Scalar>
MomentMatrix<Scalar> moment_matrix(const Sample<Scalar>& s);

/// Tr(A^2) + 1 - 2 p*Ap, i.e. ||A - j(p)||^2 with A the moment matrix.
template <class Scalar>
Real frechet_value(const Sample<Scalar>& s, const ProjectivePoint<Scalar>& p);

template <class Scalar>
Real frechet_value(const MomentMatrix<Scalar>& moments, const ProjectivePoint<Scalar>& p);

/// Eigenvector of the smallest eigenvalue. Throws NonUniqueAntimean when
/// lambda_2 - lambda_1 <= gap_tol.
template <class Scalar>
ExtremizerResult<Scalar> extrinsic_antimean(const Sample<Scalar>& s, Real gap_tol = kDefaultGapTol);

template <class Scalar>
ExtremizerResult<Scalar> extrinsic_antimean(const MomentMatrix<Scalar>& moments,
                                            std::size_t sample_size,
                                            Real gap_tol = kDefaultGapTol);

/// Eigenvector of the largest eigenvalue. Throws NonUniqueMean on a top tie.
template <class Scalar>
ExtremizerResult<Scalar> extrinsic_mean(const Sample<Scalar>& s, Real gap_tol = kDefaultGapTol);

template <class Scalar>
ExtremizerResult<Scalar> extrinsic_mean(const MomentMatrix<Scalar>& moments,
                                        std::size_t sample_size, Real gap_tol = kDefaultGapTol);

template <class Scalar>
NonfocalityReport nonfocality_report(const Sample<Scalar>& s, Real gap_tol = kDefaultGapTol);

NonfocalityReport nonfocality_report(const Vector<Real>& ascending_eigenvalues,
                                     Real gap_tol = kDefaultGapTol);

}  // namespace vwstat
