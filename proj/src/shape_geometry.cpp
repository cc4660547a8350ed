#include "vwstat/shape_geometry.hpp"

#include <cmath>

#include "vwstat/errors.hpp"

namespace vwstat {

LandmarkConfig::LandmarkConfig(std::vector<Complex> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidDimension("landmark configuration needs at least one point");
}

LandmarkConfig LandmarkConfig::from_xy(std::span<const Real> interleaved_xy) {
  if (interleaved_xy.size() % 2 != 0) {
    throw InconsistentColumns("landmark coordinates must come in (x, y) pairs");
  }
  std::vector<Complex> pts;
  pts.reserve(interleaved_xy.size() / 2);
  for (std::size_t i = 0; i + 1 < interleaved_xy.size(); i += 2) {
    pts.emplace_back(interleaved_xy[i], interleaved_xy[i + 1]);
  }
  return LandmarkConfig(std::move(pts));
}

Vector<Complex> LandmarkConfig::as_vector() const {
  Vector<Complex> v(k());
  for (int i = 0; i < k(); ++i) v(i) = points_[static_cast<std::size_t>(i)];
  return v;
}

LandmarkConfig LandmarkConfig::translated(Complex offset) const {
  auto pts = points_;
  for (auto& p : pts) p += offset;
  return LandmarkConfig(std::move(pts));
}

LandmarkConfig LandmarkConfig::rotated(Real angle) const {
  const Complex r = std::polar(1.0, angle);
  auto pts = points_;
  for (auto& p : pts) p *= r;
  return LandmarkConfig(std::move(pts));
}

LandmarkConfig LandmarkConfig::scaled(Real factor) const {
  auto pts = points_;
  for (auto& p : pts) p *= factor;
  return LandmarkConfig(std::move(pts));
}

HelmertSubmatrix::HelmertSubmatrix(int k) : k_(k) {
  if (k < 2) throw InvalidDimension("Helmert sub-matrix needs k >= 2");
  rows_ = Matrix<Real>::Zero(k - 1, k);
  for (int j = 1; j < k; ++j) {
    const Real h = 1.0 / std::sqrt(static_cast<Real>(j) * (j + 1));
    for (int c = 0; c < j; ++c) rows_(j - 1, c) = h;
    rows_(j - 1, j) = -static_cast<Real>(j) * h;
  }
}

Vector<Complex> HelmertSubmatrix::apply(const Vector<Complex>& landmarks) const {
  if (landmarks.size() != k_) throw DimensionMismatch("landmark count does not match Helmert k");
  return rows_.cast<Complex>() * landmarks;
}

HelmertSubmatrix helmert_submatrix(int k) { return HelmertSubmatrix(k); }

Preshape to_preshape(const LandmarkConfig& cfg) {
  if (cfg.k() < 3) throw InvalidDimension("planar shape needs k >= 3 landmarks");
  const Vector<Complex> centered = HelmertSubmatrix(cfg.k()).apply(cfg.as_vector());
  const Real norm = centered.norm();
  if (!(norm >= 1e-14)) throw DegenerateConfig("all landmarks coincide");
  return Preshape{centered / norm};
}

template <class Scalar>
ProjectivePoint<Scalar>::ProjectivePoint(const Vector<Scalar>& representative) {
  const Real norm = representative.norm();
  if (representative.size() < 1) throw InvalidDimension("projective point needs a nonempty vector");
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateConfig("projective point representative must be a finite nonzero vector");
  }
  rep_ = canonical_phase<Scalar>(representative / norm);
}

template <class Scalar>
ProjectivePoint<Scalar> ProjectivePoint<Scalar>::transformed(const Matrix<Scalar>& t) const {
  if (t.cols() != dim()) throw DimensionMismatch("transform does not match point dimension");
  return ProjectivePoint(t * rep_);
}

ShapePoint to_shape_point(const Preshape& preshape) { return ShapePoint(preshape.coords); }

AxialPoint to_axis(const LandmarkConfig& cfg) {
  Vector<Real> x(2 * cfg.k());
  for (int i = 0; i < cfg.k(); ++i) {
    x(2 * i) = cfg.points()[static_cast<std::size_t>(i)].real();
    x(2 * i + 1) = cfg.points()[static_cast<std::size_t>(i)].imag();
  }
  if (!(x.norm() > 1e-14)) throw DegenerateConfig("axis representative is the zero vector");
  return AxialPoint(x);
}

template <class Scalar>
SelfAdjointMatrix<Scalar> vw_embed(const ProjectivePoint<Scalar>& p) {
  return SelfAdjointMatrix<Scalar>(p.rep() * p.rep().adjoint());
}

template <class Scalar>
Vector<Scalar> affine_coords(const ProjectivePoint<Scalar>& p) {
  const Eigen::Index n = p.dim();
  const Scalar last = p.rep()(n - 1);
  if (!(std::abs(last) > kChartThreshold)) {
    throw OutsideChart("last homogeneous coordinate vanishes", {std::abs(last)});
  }
  return p.rep().head(n - 1) / last;
}

template <class Scalar>
ProjectivePoint<Scalar> from_affine(const Vector<Scalar>& w) {
  Vector<Scalar> z(w.size() + 1);
  z.head(w.size()) = w;
  z(w.size()) = Scalar(1);
  return ProjectivePoint<Scalar>(z);
}

template <class Scalar>
Real projective_distance(const ProjectivePoint<Scalar>& p, const ProjectivePoint<Scalar>& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("projective points of different dimension");
  // sqrt(2 - 2|<p,q>|^2), evaluated through the component of q orthogonal to p.
  const Vector<Scalar> residual = q.rep() - p.rep() * inner<Scalar>(p.rep(), q.rep());
  return std::sqrt(2.0) * residual.norm();
}

template <class Scalar>
bool projectively_equal(const ProjectivePoint<Scalar>& p, const ProjectivePoint<Scalar>& q,
                        Real tol) {
  if (p.dim() != q.dim()) return false;
  return std::abs(std::abs(inner<Scalar>(p.rep(), q.rep())) - 1.0) <= tol;
}

template <class Scalar>
Matrix<Scalar> orthocomplement_basis(const ProjectivePoint<Scalar>& p) {
  const Eigen::Index n = p.dim();
  Eigen::HouseholderQR<Matrix<Scalar>> qr(Matrix<Scalar>(p.rep()));
  const Matrix<Scalar> q = qr.householderQ();
  Matrix<Scalar> basis(n, n - 1);
  for (Eigen::Index c = 1; c < n; ++c) basis.col(c - 1) = canonical_phase<Scalar>(q.col(c));
  return basis;
}

template class ProjectivePoint<Real>;
template class ProjectivePoint<Complex>;
template SelfAdjointMatrix<Real> vw_embed(const ProjectivePoint<Real>&);
template SelfAdjointMatrix<Complex> vw_embed(const ProjectivePoint<Complex>&);
template Vector<Real> affine_coords(const ProjectivePoint<Real>&);
template Vector<Complex> affine_coords(const ProjectivePoint<Complex>&);
template ProjectivePoint<Real> from_affine(const Vector<Real>&);
template ProjectivePoint<Complex> from_affine(const Vector<Complex>&);
template Real projective_distance(const ProjectivePoint<Real>&, const ProjectivePoint<Real>&);
template Real projective_distance(const ProjectivePoint<Complex>&, const ProjectivePoint<Complex>&);
template bool projectively_equal(const ProjectivePoint<Real>&, const ProjectivePoint<Real>&, Real);
template bool projectively_equal(const ProjectivePoint<Complex>&, const ProjectivePoint<Complex>&,
                                 Real);
template Matrix<Real> orthocomplement_basis(const ProjectivePoint<Real>&);
template Matrix<Complex> orthocomplement_basis(const ProjectivePoint<Complex>&);

}  // namespace vwstat
