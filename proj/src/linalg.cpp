#include "vwstat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vwstat/errors.hpp"

namespace vwstat {

template <class Scalar>
SelfAdjointMatrix<Scalar>::SelfAdjointMatrix(const Matrix<Scalar>& source) {
  if (source.rows() != source.cols() || source.rows() < 1) {
    throw InvalidDimension("self-adjoint matrix must be square and non-empty");
  }
  const Eigen::Index n = source.rows();
  entries_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    entries_(j, j) = Scalar(real_part(source(j, j)));
    for (Eigen::Index i = j + 1; i < n; ++i) {
      entries_(i, j) = source(i, j);
      entries_(j, i) = conj(source(i, j));
    }
  }
}

template <class Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::identity(Eigen::Index dim) {
  return SelfAdjointMatrix(Matrix<Scalar>::Identity(dim, dim));
}

template <class Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::diagonal(const Vector<Real>& values) {
  Matrix<Scalar> d = Matrix<Scalar>::Zero(values.size(), values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) d(i, i) = Scalar(values(i));
  return SelfAdjointMatrix(d);
}

template <class Scalar>
Real SelfAdjointMatrix<Scalar>::trace() const {
  Real t = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) t += real_part(entries_(i, i));
  return t;
}

template <class Scalar>
Matrix<Scalar> SpectralDecomposition<Scalar>::reconstruct() const {
  Matrix<Scalar> out = Matrix<Scalar>::Zero(dim(), dim());
  for (Eigen::Index a = 0; a < dim(); ++a) {
    out += eigenvalues(a) * eigenvectors.col(a) * eigenvectors.col(a).adjoint();
  }
  return out;
}

namespace {

template <class Scalar>
Real off_diagonal_norm(const Matrix<Scalar>& a) {
  Real s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) s += 2.0 * abs2(a(i, j));
  }
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary G = diag(1, conj(phase)) * R(c, s), where
// phase = a(p,q)/|a(p,q)| and R is the real Jacobi rotation of the phase-rotated
// 2x2 block. Applies A <- G* A G and V <- V G.
template <class Scalar>
void jacobi_rotate(Matrix<Scalar>& a, Matrix<Scalar>& v, Eigen::Index p, Eigen::Index q) {
  const Scalar apq = a(p, q);
  const Real b = std::abs(apq);
  if (b == 0.0) return;
  const Scalar ph = conj(apq / b);  // multiplies column q so that the (p,q) entry becomes real
  const Real app = real_part(a(p, p));
  const Real aqq = real_part(a(q, q));

  const Real theta = (aqq - app) / (2.0 * b);
  Real t;
  if (std::isinf(theta)) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const Real c = 1.0 / std::sqrt(t * t + 1.0);
  const Real s = t * c;

  // G restricted to (p,q): [[c, s], [-s*ph, c*ph]]
  const Scalar gpp = Scalar(c);
  const Scalar gpq = Scalar(s);
  const Scalar gqp = Scalar(-s) * ph;
  const Scalar gqq = Scalar(c) * ph;

  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    const Scalar arp = a(r, p);
    const Scalar arq = a(r, q);
    a(r, p) = arp * gpp + arq * gqp;
    a(r, q) = arp * gpq + arq * gqq;
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    const Scalar apr = a(p, r);
    const Scalar aqr = a(q, r);
    a(p, r) = conj(gpp) * apr + conj(gqp) * aqr;
    a(q, r) = conj(gpq) * apr + conj(gqq) * aqr;
  }
  a(p, q) = Scalar(0);
  a(q, p) = Scalar(0);
  a(p, p) = Scalar(real_part(a(p, p)));
  a(q, q) = Scalar(real_part(a(q, q)));

  for (Eigen::Index r = 0; r < n; ++r) {
    const Scalar vrp = v(r, p);
    const Scalar vrq = v(r, q);
    v(r, p) = vrp * gpp + vrq * gqp;
    v(r, q) = vrp * gpq + vrq * gqq;
  }
}

}  // namespace

template <class Scalar>
SpectralDecomposition<Scalar> spectral_decompose(const SelfAdjointMatrix<Scalar>& m, Real tol) {
  if (!(tol > 0.0)) throw DomainError("spectral tolerance must be positive");
  const Eigen::Index n = m.dim();
  Matrix<Scalar> a = m.entries();
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Real norm = m.frobenius_norm();
  if (!std::isfinite(norm)) throw DomainError("matrix has non-finite entries");

  // Once the off-diagonal mass is below tol, one more sweep is applied: convergence is
  // quadratic, so eigenvectors end up accurate to rounding rather than to tol / gap.
  int sweep = 0;
  bool polished = false;
  for (;; ++sweep) {
    const Real off = off_diagonal_norm(a);
    if (off == 0.0 || polished) break;
    if (off < tol * norm) polished = true;
    if (sweep >= kJacobiSweepBudget) {
      throw NonConvergence("Jacobi eigensolver did not converge within the sweep budget",
                           {off, norm});
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return real_part(a(i, i)) < real_part(a(j, j));
  });

  SpectralDecomposition<Scalar> out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.eigenvalues(i) = real_part(a(src, src));
    out.eigenvectors.col(i) = canonical_phase<Scalar>(v.col(src));
  }
  if (n >= 2) {
    out.min_gap = out.eigenvalues(1) - out.eigenvalues(0);
    out.max_gap_top = out.eigenvalues(n - 1) - out.eigenvalues(n - 2);
  } else {
    out.min_gap = std::numeric_limits<Real>::infinity();
    out.max_gap_top = std::numeric_limits<Real>::infinity();
  }
  return out;
}

template <class Scalar>
bool hermitian_psd_check(const SpectralDecomposition<Scalar>& spectral) {
  const Eigen::Index n = spectral.dim();
  const Real top = spectral.eigenvalues(n - 1);
  return spectral.eigenvalues(0) >= -1e-10 * std::max(1.0, top);
}

template <class Scalar>
bool hermitian_psd_check(const SelfAdjointMatrix<Scalar>& m) {
  return hermitian_psd_check(spectral_decompose(m));
}

template class SelfAdjointMatrix<Real>;
template class SelfAdjointMatrix<Complex>;
template struct SpectralDecomposition<Real>;
template struct SpectralDecomposition<Complex>;
template SpectralDecomposition<Real> spectral_decompose(const SelfAdjointMatrix<Real>&, Real);
template SpectralDecomposition<Complex> spectral_decompose(const SelfAdjointMatrix<Complex>&, Real);
template bool hermitian_psd_check(const SelfAdjointMatrix<Real>&);
template bool hermitian_psd_check(const SelfAdjointMatrix<Complex>&);
template bool hermitian_psd_check(const SpectralDecomposition<Real>&);
template bool hermitian_psd_check(const SpectralDecomposition<Complex>&);

}  // namespace vwstat
