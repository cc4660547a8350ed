#pragma once

#include <span>
#include <vector>

#include "vwstat/linalg.hpp"

namespace vwstat {

/// Labeled planar points stored as complex scalars x + iy. Ordering is significant.
class LandmarkConfig {
 public:
  explicit LandmarkConfig(std::vector<Complex> points);
  static LandmarkConfig from_xy(std::span<const Real> interleaved_xy);

  int k() const noexcept { return static_cast<int>(points_.size()); }
  const std::vector<Complex>& points() const noexcept { return points_; }
  Vector<Complex> as_vector() const;

  LandmarkConfig translated(Complex offset) const;
  LandmarkConfig rotated(Real angle) const;
  LandmarkConfig scaled(Real factor) const;

 private:
  std::vector<Complex> points_;
};

/// Last k-1 rows of the k x k Helmert matrix.
class HelmertSubmatrix {
 public:
  explicit HelmertSubmatrix(int k);

  int k() const noexcept { return k_; }
  const Matrix<Real>& rows() const noexcept { return rows_; }
  Vector<Complex> apply(const Vector<Complex>& landmarks) const;

 private:
  int k_;
  Matrix<Real> rows_;
};

HelmertSubmatrix helmert_submatrix(int k);

/// Location- and scale-free representative of a k-ad: a unit vector in C^{k-1}.
/// Keeps the rotation phase of the source configuration.
struct Preshape {
  Vector<Complex> coords;
};

Preshape to_preshape(const LandmarkConfig& cfg);

/// A point of RP^{N-1} (Scalar = Real) or CP^{N-1} (Scalar = Complex), held as a
/// unit representative in canonical phase.
template <class Scalar>
class ProjectivePoint {
 public:
  /// Normalizes any nonzero vector. Throws DegenerateConfig for the zero vector.
  explicit ProjectivePoint(const Vector<Scalar>& representative);

  const Vector<Scalar>& rep() const noexcept { return rep_; }
  Eigen::Index dim() const noexcept { return rep_.size(); }

  /// [T x] for a linear map T.
  ProjectivePoint transformed(const Matrix<Scalar>& t) const;

 private:
  Vector<Scalar> rep_;
};

using AxialPoint = ProjectivePoint<Real>;
using ShapePoint = ProjectivePoint<Complex>;

ShapePoint to_shape_point(const Preshape& preshape);

/// Axial reading of a configuration: (x1, y1, ..., xk, yk) as a direction in R^{2k}.
AxialPoint to_axis(const LandmarkConfig& cfg);

/// Veronese-Whitney image x x*.
template <class Scalar>
SelfAdjointMatrix<Scalar> vw_embed(const ProjectivePoint<Scalar>& p);

inline SelfAdjointMatrix<Complex> vw_embed_complex(const ShapePoint& p) { return vw_embed(p); }
inline SelfAdjointMatrix<Real> vw_embed_real(const AxialPoint& p) { return vw_embed(p); }

inline constexpr Real kChartThreshold = 1e-10;

/// w^i = z^i / z^{N}. Throws OutsideChart when |z^N| <= 1e-10.
template <class Scalar>
Vector<Scalar> affine_coords(const ProjectivePoint<Scalar>& p);

/// Inverse chart: [w^1 : ... : w^{N-1} : 1].
template <class Scalar>
ProjectivePoint<Scalar> from_affine(const Vector<Scalar>& w);

/// Chord distance between VW images, sqrt(2 - 2 |<p, q>|^2).
template <class Scalar>
Real projective_distance(const ProjectivePoint<Scalar>& p, const ProjectivePoint<Scalar>& q);

template <class Scalar>
bool projectively_equal(const ProjectivePoint<Scalar>& p, const ProjectivePoint<Scalar>& q,
                        Real tol = 1e-9);

/// N x (N-1) orthonormal basis of the orthogonal complement of p, from the
/// Householder reflector mapping e_1 onto the line of p. Columns in canonical phase.
template <class Scalar>
Matrix<Scalar> orthocomplement_basis(const ProjectivePoint<Scalar>& p);

}  // namespace vwstat
