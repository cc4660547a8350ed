#include <doctest.h>

#include "test_support.hpp"
#include "vwstat/errors.hpp"
#include "vwstat/shape_geometry.hpp"

using namespace vwstat;
using vwstat::testing::Rng;

namespace {

LandmarkConfig random_config(Rng& rng, int k) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> pts;
  for (int i = 0; i < k; ++i) pts.emplace_back(g(rng), g(rng));
  return LandmarkConfig(std::move(pts));
}

}  // namespace

TEST_CASE("helmert_submatrix: small cases") {
  const auto h2 = helmert_submatrix(2).rows();
  CHECK(h2.rows() == 1);
  CHECK(h2(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(h2(0, 1) == doctest::Approx(-1.0 / std::sqrt(2.0)));

  const auto h3 = helmert_submatrix(3).rows();
  Matrix<Real> expected{{1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0.0},
                        {1 / std::sqrt(6.0), 1 / std::sqrt(6.0), -2 / std::sqrt(6.0)}};
  CHECK((h3 - expected).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(helmert_submatrix(1), InvalidDimension);
}

TEST_CASE("helmert_submatrix: orthonormal rows orthogonal to ones, k = 2..20") {
  for (int k = 2; k <= 20; ++k) {
    const auto h = helmert_submatrix(k).rows();
    CHECK(h.rows() == k - 1);
    CHECK((h * Vector<Real>::Ones(k)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((h * h.transpose() - Matrix<Real>::Identity(k - 1, k - 1)).cwiseAbs().maxCoeff() <= 1e-12);
    for (int j = 1; j < k; ++j) {
      const double hj = 1.0 / std::sqrt(double(j) * (j + 1));
      for (int c = 0; c < j; ++c) CHECK(h(j - 1, c) == hj);
      CHECK(h(j - 1, j) == -j * hj);
      for (int c = j + 1; c < k; ++c) CHECK(h(j - 1, c) == 0.0);
    }
  }
}

TEST_CASE("to_preshape: equilateral triangle and translation invariance") {
  const LandmarkConfig tri({Complex(0, 0), Complex(1, 0), Complex(0.5, std::sqrt(3.0) / 2)});
  const Preshape a = to_preshape(tri);
  const Preshape b = to_preshape(tri.translated(Complex(5, -3)));
  CHECK(std::abs(a.coords.norm() - 1.0) < 1e-12);
  CHECK((a.coords - b.coords).cwiseAbs().maxCoeff() < 1e-12);
  // First Helmert coordinate: (z1 - z2)/sqrt(2) = -1/sqrt(2) before scaling by 1/||H z|| = 1.
  CHECK(std::abs(a.coords(0) - Complex(-1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
}

TEST_CASE("to_preshape: degenerate and undersized configurations") {
  CHECK_THROWS_AS(to_preshape(LandmarkConfig({Complex(2, 1), Complex(2, 1), Complex(2, 1)})),
                  DegenerateConfig);
  CHECK_THROWS_AS(to_preshape(LandmarkConfig({Complex(0, 0), Complex(1, 0)})), InvalidDimension);
}

TEST_CASE("to_preshape: translation invariance and rotation/scale equivariance") {
  Rng rng(2024);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 3 + trial % 10;
    const LandmarkConfig cfg = random_config(rng, k);
    const Preshape z = to_preshape(cfg);
    CHECK(std::abs(z.coords.norm() - 1.0) <= 1e-12);

    const Complex shift(angle(rng), angle(rng));
    CHECK(projective_distance(to_shape_point(to_preshape(cfg.translated(shift))), to_shape_point(z)) <=
          1e-7);

    const double theta = angle(rng);
    const Preshape rotated = to_preshape(cfg.rotated(theta).scaled(scale(rng)));
    CHECK((rotated.coords - std::polar(1.0, theta) * z.coords).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("to_preshape: eleven landmarks, direct recomputation") {
  Rng rng(11);
  const LandmarkConfig cfg = random_config(rng, 11);
  const Preshape z = to_preshape(cfg);
  // Direct recomputation from explicit Helmert rows.
  Vector<Complex> direct = Vector<Complex>::Zero(10);
  for (int j = 1; j <= 10; ++j) {
    const double h = 1.0 / std::sqrt(double(j) * (j + 1));
    Complex acc(0.0);
    for (int c = 0; c < j; ++c) acc += h * cfg.points()[c];
    acc -= j * h * cfg.points()[j];
    direct(j - 1) = acc;
  }
  direct.normalize();
  CHECK((direct - z.coords).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("vw_embed_complex") {
  const auto e1 = vw_embed_complex(ShapePoint(Vector<Complex>{{1.0, 0.0}}));
  CHECK(e1(0, 0) == Complex(1.0));
  CHECK(e1(0, 1) == Complex(0.0));
  CHECK(e1(1, 1) == Complex(0.0));

  const auto m = vw_embed_complex(ShapePoint(Vector<Complex>{{Complex(1, 0), Complex(0, 1)}}));
  CHECK(std::abs(m(0, 0) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(m(0, 1) - Complex(0, -0.5)) < 1e-15);
  CHECK(std::abs(m(1, 0) - Complex(0, 0.5)) < 1e-15);
  CHECK(std::abs(m(1, 1) - Complex(0.5, 0)) < 1e-15);
}

TEST_CASE("vw_embed_real") {
  const auto e1 = vw_embed_real(AxialPoint(Vector<Real>{{1.0, 0.0, 0.0}}));
  Matrix<Real> expected = Matrix<Real>::Zero(3, 3);
  expected(0, 0) = 1.0;
  CHECK(e1.entries() == expected);

  const double t = 22.5 * std::numbers::pi / 180.0;
  const auto m = vw_embed_real(AxialPoint(Vector<Real>{{std::cos(t), std::sin(t)}}));
  Matrix<Real> outer{{std::cos(t) * std::cos(t), std::cos(t) * std::sin(t)},
                     {std::cos(t) * std::sin(t), std::sin(t) * std::sin(t)}};
  CHECK((m.entries() - outer).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(m.trace() - 1.0) < 1e-15);
}

TEST_CASE("vw_embed: projection identities and equivariance") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 8;
    const auto pc = testing::random_point<Complex>(rng, n);
    const auto jc = vw_embed(pc).entries();
    CHECK((jc - jc.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((jc * jc - jc).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(jc.trace().real() - 1.0) <= 1e-12);

    const auto pr = testing::random_point<Real>(rng, n);
    const Matrix<Real> t = testing::random_special_unitary<Real>(rng, n);
    const auto lhs = vw_embed(pr.transformed(t)).entries();
    const Matrix<Real> rhs = t * vw_embed(pr).entries() * t.transpose();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);

    const Matrix<Complex> u = testing::random_special_unitary<Complex>(rng, n);
    const auto lhs_c = vw_embed(pc.transformed(u)).entries();
    const Matrix<Complex> rhs_c = u * jc * u.adjoint();
    CHECK((lhs_c - rhs_c).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("affine_coords") {
  const auto origin = affine_coords(ShapePoint(Vector<Complex>{{0.0, 0.0, 1.0}}));
  CHECK(origin.cwiseAbs().maxCoeff() == 0.0);

  const ShapePoint p(Vector<Complex>{{Complex(1, 0), Complex(0, 2), Complex(1, 1)}});
  const auto w = affine_coords(p);
  CHECK(std::abs(w(0) - Complex(0.5, -0.5)) < 1e-15);
  CHECK(std::abs(w(1) - Complex(1.0, 1.0)) < 1e-15);

  CHECK_THROWS_AS(affine_coords(ShapePoint(Vector<Complex>{{1.0, 1.0, 0.0}})), OutsideChart);
}

TEST_CASE("affine_coords: phase invariance and inverse chart") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector<Complex> w = testing::gaussian_vector<Complex>(rng, 1 + trial % 6);
    const ShapePoint p = from_affine(w);
    CHECK((affine_coords(p) - w).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, w.norm()));
    const ShapePoint q(p.rep() * std::polar(1.0, 0.3 + trial));
    CHECK((affine_coords(q) - affine_coords(p)).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, w.norm()));
  }
}

TEST_CASE("projective_distance") {
  const ShapePoint e1(Vector<Complex>{{1.0, 0.0}});
  const ShapePoint e2(Vector<Complex>{{0.0, 1.0}});
  CHECK(projective_distance(e1, e1) == 0.0);
  CHECK(std::abs(projective_distance(e1, e2) - std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(projective_distance(e1, ShapePoint(Vector<Complex>{{1.0, 0.0, 0.0}})),
                  DimensionMismatch);

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 7;
    const auto p = testing::random_point<Complex>(rng, n);
    const auto q = testing::random_point<Complex>(rng, n);
    const double frob = (vw_embed(p).entries() - vw_embed(q).entries()).norm();
    CHECK(std::abs(projective_distance(p, q) - frob) <= 1e-10);
    CHECK(projective_distance(p, q) == doctest::Approx(projective_distance(q, p)));
  }
}

TEST_CASE("ProjectivePoint: canonical phase and equivalence") {
  const ShapePoint a(Vector<Complex>{{Complex(0, 3), Complex(1, 0)}});
  CHECK(a.rep()(0).imag() == 0.0);
  CHECK(a.rep()(0).real() > 0.0);
  const ShapePoint b(a.rep() * std::polar(2.5, 1.1));
  CHECK(projectively_equal(a, b));
  CHECK((a.rep() - b.rep()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(ShapePoint(Vector<Complex>::Zero(3)), DegenerateConfig);
}

TEST_CASE("orthocomplement_basis") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 2 + trial % 7;
    const auto p = testing::random_point<Complex>(rng, n);
    const Matrix<Complex> basis = orthocomplement_basis(p);
    CHECK(basis.cols() == n - 1);
    CHECK((basis.adjoint() * p.rep()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((basis.adjoint() * basis - Matrix<Complex>::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() <=
          1e-12);
  }
}
