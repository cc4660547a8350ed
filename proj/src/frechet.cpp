#include "vwstat/frechet.hpp"

#include <cmath>

#include "vwstat/errors.hpp"

namespace vwstat {

const char* to_string(ExtremeKind kind) noexcept {
  return kind == ExtremeKind::Mean ? "mean" : "antimean";
}

template <class Scalar>
Sample<Scalar>::Sample(std::vector<ProjectivePoint<Scalar>> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw InvalidDimension("sample must contain at least one point");
  weights_.assign(points_.size(), 1.0 / static_cast<Real>(points_.size()));
  for (const auto& p : points_) {
    if (p.dim() != points_.front().dim()) throw DimensionMismatch("sample points differ in dimension");
  }
}

template <class Scalar>
Sample<Scalar>::Sample(std::vector<ProjectivePoint<Scalar>> points, std::vector<Real> weights)
    : Sample(std::move(points)) {
  if (weights.size() != points_.size()) throw DimensionMismatch("one weight per point required");
  Real total = 0.0;
  for (Real w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("weights must sum to 1", {total});
  weights_ = std::move(weights);
}

template <class Scalar>
Sample<Scalar> Sample<Scalar>::transformed(const Matrix<Scalar>& t) const {
  std::vector<ProjectivePoint<Scalar>> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.push_back(p.transformed(t));
  return Sample(std::move(pts), weights_);
}

namespace {

template <class Scalar>
Matrix<Scalar> pairwise_moment_sum(const Sample<Scalar>& s, std::size_t lo, std::size_t hi) {
  constexpr std::size_t kLeaf = 8;
  if (hi - lo <= kLeaf) {
    Matrix<Scalar> acc = Matrix<Scalar>::Zero(s.dim(), s.dim());
    for (std::size_t r = lo; r < hi; ++r) {
      const auto& x = s[r].rep();
      acc.noalias() += s.weights()[r] * (x * x.adjoint());
    }
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_moment_sum(s, lo, mid) + pairwise_moment_sum(s, mid, hi);
}

template <class Scalar>
Real trace_of_square(const SelfAdjointMatrix<Scalar>& a) {
  return a.entries().squaredNorm();
}

std::vector<double> bottom_cluster(const Vector<Real>& lambda, Real gap_tol) {
  std::vector<double> out{lambda(0)};
  for (Eigen::Index i = 1; i < lambda.size() && lambda(i) - lambda(i - 1) <= gap_tol; ++i) {
    out.push_back(lambda(i));
  }
  return out;
}

std::vector<double> top_cluster(const Vector<Real>& lambda, Real gap_tol) {
  const Eigen::Index n = lambda.size();
  std::vector<double> out{lambda(n - 1)};
  for (Eigen::Index i = n - 2; i >= 0 && lambda(i + 1) - lambda(i) <= gap_tol; --i) {
    out.push_back(lambda(i));
  }
  return out;
}

}  // namespace

template <class Scalar>
MomentMatrix<Scalar> moment_matrix(const Sample<Scalar>& s) {
  SelfAdjointMatrix<Scalar> a(pairwise_moment_sum(s, 0, s.size()));
  auto spectral = spectral_decompose(a);
  return MomentMatrix<Scalar>{std::move(a), std::move(spectral)};
}

template <class Scalar>
Real frechet_value(const MomentMatrix<Scalar>& moments, const ProjectivePoint<Scalar>& p) {
  if (p.dim() != moments.matrix.dim()) throw DimensionMismatch("point and sample dimensions differ");
  const Real quad = real_part(inner<Scalar>(p.rep(), moments.matrix.entries() * p.rep()));
  return trace_of_square(moments.matrix) + 1.0 - 2.0 * quad;
}

template <class Scalar>
Real frechet_value(const Sample<Scalar>& s, const ProjectivePoint<Scalar>& p) {
  return frechet_value(moment_matrix(s), p);
}

template <class Scalar>
ExtremizerResult<Scalar> extrinsic_antimean(const MomentMatrix<Scalar>& moments,
                                            std::size_t sample_size, Real gap_tol) {
  const auto& sp = moments.spectral;
  if (sp.dim() < 2 || !(sp.min_gap > gap_tol)) {
    throw NonUniqueAntimean("smallest eigenvalue of the moment matrix is not simple",
                            bottom_cluster(sp.eigenvalues, gap_tol));
  }
  const Real lambda = sp.eigenvalues(0);
  return ExtremizerResult<Scalar>{ProjectivePoint<Scalar>(sp.eigenvector(0)), lambda, sp.min_gap,
                                  trace_of_square(moments.matrix) + 1.0 - 2.0 * lambda,
                                  ExtremeKind::Antimean, sample_size};
}

template <class Scalar>
ExtremizerResult<Scalar> extrinsic_antimean(const Sample<Scalar>& s, Real gap_tol) {
  return extrinsic_antimean(moment_matrix(s), s.size(), gap_tol);
}

template <class Scalar>
ExtremizerResult<Scalar> extrinsic_mean(const MomentMatrix<Scalar>& moments,
                                        std::size_t sample_size, Real gap_tol) {
  const auto& sp = moments.spectral;
  if (sp.dim() < 2 || !(sp.max_gap_top > gap_tol)) {
    throw NonUniqueMean("largest eigenvalue of the moment matrix is not simple",
                        top_cluster(sp.eigenvalues, gap_tol));
  }
  const Eigen::Index top = sp.dim() - 1;
  const Real lambda = sp.eigenvalues(top);
  return ExtremizerResult<Scalar>{ProjectivePoint<Scalar>(sp.eigenvector(top)), lambda,
                                  sp.max_gap_top,
                                  trace_of_square(moments.matrix) + 1.0 - 2.0 * lambda,
                                  ExtremeKind::Mean, sample_size};
}

template <class Scalar>
ExtremizerResult<Scalar> extrinsic_mean(const Sample<Scalar>& s, Real gap_tol) {
  return extrinsic_mean(moment_matrix(s), s.size(), gap_tol);
}

NonfocalityReport nonfocality_report(const Vector<Real>& lambda, Real gap_tol) {
  const Eigen::Index n = lambda.size();
  NonfocalityReport r{};
  r.lambda_min = lambda(0);
  r.lambda_max = lambda(n - 1);
  r.gap_bottom = n >= 2 ? lambda(1) - lambda(0) : 0.0;
  r.gap_top = n >= 2 ? lambda(n - 1) - lambda(n - 2) : 0.0;
  r.multiplicity_bottom = static_cast<int>(bottom_cluster(lambda, gap_tol).size());
  r.multiplicity_top = static_cast<int>(top_cluster(lambda, gap_tol).size());
  r.alpha_vw_nonfocal = n >= 2 && r.multiplicity_bottom == 1 && r.lambda_min > gap_tol;
  r.vw_nonfocal = n >= 2 && r.multiplicity_top == 1;
  return r;
}

template <class Scalar>
NonfocalityReport nonfocality_report(const Sample<Scalar>& s, Real gap_tol) {
  return nonfocality_report(moment_matrix(s).spectral.eigenvalues, gap_tol);
}

#define VWSTAT_INSTANTIATE(S)                                                                   \
  template class Sample<S>;                                                                     \
  template MomentMatrix<S> moment_matrix(const Sample<S>&);                                     \
  template Real frechet_value(const Sample<S>&, const ProjectivePoint<S>&);                     \
  template Real frechet_value(const MomentMatrix<S>&, const ProjectivePoint<S>&);               \
  template ExtremizerResult<S> extrinsic_antimean(const Sample<S>&, Real);                      \
  template ExtremizerResult<S> extrinsic_antimean(const MomentMatrix<S>&, std::size_t, Real);   \
  template ExtremizerResult<S> extrinsic_mean(const Sample<S>&, Real);                          \
  template ExtremizerResult<S> extrinsic_mean(const MomentMatrix<S>&, std::size_t, Real);       \
  template NonfocalityReport nonfocality_report(const Sample<S>&, Real);

VWSTAT_INSTANTIATE(Real)
VWSTAT_INSTANTIATE(Complex)

#undef VWSTAT_INSTANTIATE

}  // namespace vwstat
