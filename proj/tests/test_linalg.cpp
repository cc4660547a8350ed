#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "test_support.hpp"
#include "vwstat/errors.hpp"
#include "vwstat/linalg.hpp"

using namespace vwstat;
using vwstat::testing::Rng;

namespace {

template <class Scalar>
void check_decomposition(const Matrix<Scalar>& source) {
  const SelfAdjointMatrix<Scalar> m(source);
  const auto sp = spectral_decompose(m);
  const Eigen::Index n = m.dim();

  for (Eigen::Index i = 1; i < n; ++i) CHECK(sp.eigenvalues(i - 1) <= sp.eigenvalues(i));

  const double recon = (sp.reconstruct() - m.entries()).norm();
  CHECK(recon <= 1e-10 * std::max(1.0, m.frobenius_norm()));

  const Matrix<Scalar> gram = sp.eigenvectors.adjoint() * sp.eigenvectors;
  CHECK((gram - Matrix<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);

  CHECK(std::abs(sp.eigenvalues.sum() - m.trace()) <= 1e-10 * std::max(1.0, m.frobenius_norm()));

  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index best = 0;
    sp.eigenvectors.col(c).cwiseAbs().maxCoeff(&best);
    const Scalar lead = sp.eigenvectors(best, c);
    CHECK(real_part(lead) > 0.0);
    if constexpr (is_complex_v<Scalar>) CHECK(lead.imag() == 0.0);
  }

  // Independent eigenvalue oracle.
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> ref(m.entries());
  CHECK((ref.eigenvalues() - sp.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, m.frobenius_norm()));
}

}  // namespace

TEST_CASE("spectral_decompose: identity has flat spectrum") {
  const auto sp = spectral_decompose(SelfAdjointMatrix<Real>::identity(3));
  CHECK(sp.eigenvalues.isApprox(Vector<Real>::Ones(3)));
  CHECK(sp.min_gap == 0.0);
  CHECK((sp.eigenvectors.transpose() * sp.eigenvectors).isApprox(Matrix<Real>::Identity(3, 3)));
}

TEST_CASE("spectral_decompose: diagonal input") {
  const auto sp = spectral_decompose(SelfAdjointMatrix<Real>::diagonal(Vector<Real>{{0.25, 0.75}}));
  CHECK(sp.eigenvalues(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sp.eigenvalues(1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(sp.eigenvectors.isApprox(Matrix<Real>::Identity(2, 2)));
  CHECK(sp.min_gap == doctest::Approx(0.5));
}

TEST_CASE("spectral_decompose: 2x2 closed form") {
  // Characteristic polynomial l^2 - l + 1/8: roots (1 -+ sqrt(1/2)) / 2.
  Matrix<Real> a{{0.75, 0.25}, {0.25, 0.25}};
  const auto sp = spectral_decompose(SelfAdjointMatrix<Real>(a));
  const double l1 = (1.0 - std::sqrt(0.5)) / 2.0;
  const double l2 = (1.0 + std::sqrt(0.5)) / 2.0;
  CHECK(std::abs(sp.eigenvalues(0) - l1) < 1e-14);
  CHECK(std::abs(sp.eigenvalues(1) - l2) < 1e-14);
  CHECK(std::abs(l1 - 0.146447) < 1e-6);
  // (A - l1) v = 0 from the first row: v ~ (0.25, -(0.75 - l1)).
  Vector<Real> v{{0.25, -(0.75 - l1)}};
  v.normalize();
  CHECK(std::abs(std::abs(v.dot(sp.eigenvector(0))) - 1.0) < 1e-14);
}

TEST_CASE("spectral_decompose: complex Hermitian 2x2") {
  Matrix<Complex> a(2, 2);
  a << Complex(0.5, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0.5, 0);
  const auto sp = spectral_decompose(SelfAdjointMatrix<Complex>(a));
  CHECK(std::abs(sp.eigenvalues(0)) < 1e-15);
  CHECK(std::abs(sp.eigenvalues(1) - 1.0) < 1e-15);
  check_decomposition<Complex>(a);
}

TEST_CASE("spectral_decompose: random real and complex matrices") {
  Rng rng(1234);
  for (int draw = 0; draw < 100; ++draw) {
    const Eigen::Index n = 2 + draw % 11;
    check_decomposition<Real>(testing::random_self_adjoint<Real>(rng, n));
    check_decomposition<Complex>(testing::random_self_adjoint<Complex>(rng, n));
  }
}

TEST_CASE("spectral_decompose: unitary similarity preserves the spectrum") {
  Rng rng(99);
  for (int draw = 0; draw < 50; ++draw) {
    const Eigen::Index n = 2 + draw % 9;
    const Matrix<Complex> m = testing::random_self_adjoint<Complex>(rng, n);
    const Matrix<Complex> u = testing::random_special_unitary<Complex>(rng, n);
    const auto a = spectral_decompose(SelfAdjointMatrix<Complex>(m));
    const auto b = spectral_decompose(SelfAdjointMatrix<Complex>(u * m * u.adjoint()));
    CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("spectral_decompose: deterministic and validates tolerance") {
  Rng rng(5);
  const SelfAdjointMatrix<Complex> m(testing::random_self_adjoint<Complex>(rng, 6));
  const auto a = spectral_decompose(m);
  const auto b = spectral_decompose(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  CHECK_THROWS_AS(spectral_decompose(m, 0.0), DomainError);
}

TEST_CASE("spectral_decompose: stable tie ordering") {
  // Exactly tied eigenvalues keep their original column order.
  const auto sp = spectral_decompose(SelfAdjointMatrix<Real>::diagonal(Vector<Real>{{2.0, 1.0, 2.0, 1.0}}));
  CHECK(sp.eigenvectors(1, 0) == 1.0);
  CHECK(sp.eigenvectors(3, 1) == 1.0);
  CHECK(sp.eigenvectors(0, 2) == 1.0);
  CHECK(sp.eigenvectors(2, 3) == 1.0);
}

TEST_CASE("SelfAdjointMatrix: lower triangle is authoritative") {
  Matrix<Complex> a(2, 2);
  a << Complex(1, 3), Complex(9, 9), Complex(2, 1), Complex(4, 0);
  const SelfAdjointMatrix<Complex> m(a);
  CHECK(m(0, 1) == Complex(2, -1));
  CHECK(m(1, 0) == Complex(2, 1));
  CHECK(m(0, 0) == Complex(1, 0));
  CHECK_THROWS_AS(SelfAdjointMatrix<Real>(Matrix<Real>(2, 3)), InvalidDimension);
}

TEST_CASE("hermitian_psd_check") {
  CHECK(hermitian_psd_check(SelfAdjointMatrix<Real>::identity(3)));
  CHECK_FALSE(hermitian_psd_check(SelfAdjointMatrix<Real>::diagonal(Vector<Real>{{-1.0, 1.0}})));

  Rng rng(77);
  for (int draw = 0; draw < 100; ++draw) {
    const Eigen::Index dim = 2 + draw % 6;
    Matrix<Complex> j = Matrix<Complex>::Zero(dim, dim);
    const int n = 1 + draw % 15;
    for (int r = 0; r < n; ++r) {
      const Vector<Complex> z = testing::random_point<Complex>(rng, dim).rep();
      j += z * z.adjoint() / static_cast<double>(n);
    }
    CHECK(hermitian_psd_check(SelfAdjointMatrix<Complex>(j)));
  }
}
