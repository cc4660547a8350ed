#pragma once

#include <Eigen/Dense>

#include <complex>
#include <type_traits>

namespace vwstat {

using Real = double;
using Complex = std::complex<double>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
inline constexpr bool is_complex_v = std::is_same_v<Scalar, Complex>;

inline Real conj(Real x) noexcept { return x; }
inline Complex conj(const Complex& x) noexcept { return std::conj(x); }
inline Real real_part(Real x) noexcept { return x; }
inline Real real_part(const Complex& x) noexcept { return x.real(); }
inline Real abs2(Real x) noexcept { return x * x; }
inline Real abs2(const Complex& x) noexcept { return std::norm(x); }

/// x/|x|, or 1 for x == 0.
template <class Scalar>
Scalar unit_phase(const Scalar& x) {
  const Real r = std::abs(x);
  if (r == 0.0) return Scalar(1);
  return x / r;
}

/// Hermitian inner product <u, v> = u* v (conjugate-linear in u).
template <class Scalar>
Scalar inner(const Vector<Scalar>& u, const Vector<Scalar>& v) {
  return u.dot(v);
}

/// Rescales v by a unit scalar so that its first largest-modulus entry is real and positive.
template <class Scalar>
Vector<Scalar> canonical_phase(Vector<Scalar> v) {
  if (v.size() == 0) return v;
  Eigen::Index best = 0;
  Real best_mod = std::abs(v(0));
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const Real m = std::abs(v(i));
    if (m > best_mod) {
      best_mod = m;
      best = i;
    }
  }
  if (best_mod == 0.0) return v;
  v *= conj(unit_phase(v(best)));
  if constexpr (is_complex_v<Scalar>) v(best) = Complex(std::abs(v(best)), 0.0);
  return v;
}

/// Real-symmetric or complex-Hermitian matrix. The lower triangle of the
/// source is authoritative; the upper triangle is stored as its conjugate
/// mirror and the diagonal is forced real.
template <class Scalar>
class SelfAdjointMatrix {
 public:
  explicit SelfAdjointMatrix(const Matrix<Scalar>& source);

  static SelfAdjointMatrix identity(Eigen::Index dim);
  static SelfAdjointMatrix diagonal(const Vector<Real>& values);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Matrix<Scalar>& entries() const noexcept { return entries_; }
  Scalar operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

  Real trace() const;
  Real frobenius_norm() const { return entries_.norm(); }

 private:
  Matrix<Scalar> entries_;
};

/// Eigen-system with eigenvalues in increasing order and phase-normalized
/// orthonormal eigenvector columns.
template <class Scalar>
struct SpectralDecomposition {
  Vector<Real> eigenvalues;
  Matrix<Scalar> eigenvectors;
  Real min_gap = 0.0;      // lambda_2 - lambda_1
  Real max_gap_top = 0.0;  // lambda_N - lambda_{N-1}
  int sweeps = 0;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }
  Vector<Scalar> eigenvector(Eigen::Index i) const { return eigenvectors.col(i); }
  Matrix<Scalar> reconstruct() const;
};

inline constexpr Real kDefaultSpectralTol = 1e-12;
inline constexpr int kJacobiSweepBudget = 100;

/// Cyclic Jacobi eigen-decomposition. Throws NonConvergence when the
/// off-diagonal norm does not drop below tol * ||M|| within the sweep budget.
template <class Scalar>
SpectralDecomposition<Scalar> spectral_decompose(const SelfAdjointMatrix<Scalar>& m,
                                                 Real tol = kDefaultSpectralTol);

/// True iff lambda_1 >= -1e-10 * max(1, lambda_N).
template <class Scalar>
bool hermitian_psd_check(const SelfAdjointMatrix<Scalar>& m);

template <class Scalar>
bool hermitian_psd_check(const SpectralDecomposition<Scalar>& spectral);

}  // namespace vwstat
