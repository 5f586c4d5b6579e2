#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "blidkit/errors.hpp"
#include "blidkit/polyalg.hpp"
#include "blidkit/random.hpp"
#include "oracles.hpp"

using namespace blidkit;

namespace {

HomPolyMap x1sq_x2() { return oracle::to_hompoly(2, 3, {{{2, 1}, 1.0}}); }

double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-12);
}

}  // namespace

TEST_CASE("monomial basis order and sizes") {
  const std::vector<MultiIndex> b = monomial_basis(2, 2);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == MultiIndex({2, 0}));
  CHECK(b[1] == MultiIndex({1, 1}));
  CHECK(b[2] == MultiIndex({0, 2}));
  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= 5; ++n) {
      const auto basis = monomial_basis(m, n);
      CHECK(static_cast<int>(basis.size()) == basis_size(m, n));
      for (const MultiIndex& p : basis) CHECK(p.degree() == n);
      for (std::size_t k = 1; k < basis.size(); ++k) CHECK(basis[k - 1] > basis[k]);
    }
  }
  CHECK(factorial(5) == 120.0);
  CHECK(falling_factorial(4, 2) == 12.0);
  CHECK(falling_factorial(2, 3) == 0.0);
}

TEST_CASE("polynomial construction limits") {
  CHECK_THROWS_AS(HomPolyMap(0, 1, 2), DimensionMismatch);
  CHECK_THROWS_AS(HomPolyMap(7, 1, 2), DimensionMismatch);
  CHECK_THROWS_AS(HomPolyMap(2, 1, 7), DegreeTooHigh);
  HomPolyMap p(2, 1, 2);
  CHECK_THROWS_AS(p.set_coeff(0, MultiIndex({1, 0}), 1.0), DegreeTooHigh);
}

TEST_CASE("evaluation") {
  const HomPolyMap p = x1sq_x2();
  CHECK(hompoly_eval(p, Eigen::Vector2d(1, 1))[0] == 1.0);
  CHECK(hompoly_eval(p, Eigen::Vector2d(2, 3))[0] == 12.0);
  CHECK(hompoly_eval(p, Eigen::Vector2d::Zero())[0] == 0.0);
  CHECK_THROWS_AS(hompoly_eval(p, Eigen::Vector3d(1, 1, 1)), DimensionMismatch);

  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const int m = rng.uniform_int(1, 4);
    const int j = rng.uniform_int(0, 5);
    const auto mono = oracle::random_monomials(m, j, rng);
    const HomPolyMap q = oracle::to_hompoly(m, j, mono);
    const Eigen::VectorXd x = rng.uniform_vector(m, -2.0, 2.0);
    CHECK(rel(q(x)[0], oracle::poly(mono, x)) <= 1e-12);
    // Homogeneity.
    const double lam = rng.uniform(-3.0, 3.0);
    CHECK(std::abs(q(lam * x)[0] - std::pow(lam, j) * q(x)[0]) <=
          1e-10 * (1 + std::abs(std::pow(lam, j) * q(x)[0])));
  }
}

TEST_CASE("polarization") {
  SUBCASE("x1^2 gives u1 v1") {
    const SymMultilinear g = polarize(oracle::to_hompoly(2, 2, {{{2, 0}, 1.0}}));
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd u = rng.uniform_vector(2, -1, 1);
      const Eigen::VectorXd v = rng.uniform_vector(2, -1, 1);
      CHECK(g({u, v})[0] == doctest::Approx(u[0] * v[0]).epsilon(1e-14));
    }
  }
  SUBCASE("x1 x2 gives the symmetrized product") {
    const SymMultilinear g = polarize(oracle::to_hompoly(2, 2, {{{1, 1}, 1.0}}));
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd u = rng.uniform_vector(2, -1, 1);
      const Eigen::VectorXd v = rng.uniform_vector(2, -1, 1);
      CHECK(g({u, v})[0] ==
            doctest::Approx((u[0] * v[1] + u[1] * v[0]) / 2).epsilon(1e-14));
    }
  }
  SUBCASE("diagonal and permutation invariance on random polynomials") {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
      const int m = rng.uniform_int(1, 3);
      const int j = rng.uniform_int(1, 5);
      const auto mono = oracle::random_monomials(m, j, rng);
      const HomPolyMap p = oracle::to_hompoly(m, j, mono);
      const SymMultilinear g = polarize(p);
      const Eigen::VectorXd x = rng.uniform_vector(m, -1, 1);
      CHECK(rel(g(std::vector<Eigen::VectorXd>(j, x))[0], oracle::poly(mono, x)) <=
            1e-10);
      std::vector<Eigen::VectorXd> args;
      for (int i = 0; i < j; ++i) args.push_back(rng.uniform_vector(m, -1, 1));
      const double base = g(args)[0];
      std::vector<int> perm(j);
      std::iota(perm.begin(), perm.end(), 0);
      while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<Eigen::VectorXd> shuffled;
        for (int i : perm) shuffled.push_back(args[i]);
        CHECK(std::abs(g(shuffled)[0] - base) <= 1e-12 * (1 + std::abs(base)));
      }
    }
  }
  CHECK_THROWS(polarize(HomPolyMap(2, 1, 0)));
}

TEST_CASE("derivative formula") {
  const HomPolyMap p = x1sq_x2();
  const Eigen::Vector2d z(1, 0), x(0, 1);
  CHECK(hompoly_derivative(p, z, x, 1)[0] == doctest::Approx(1.0));
  CHECK(hompoly_derivative(p, z, x, 4)[0] == 0.0);
  CHECK(hompoly_derivative(p, z, Eigen::Vector2d(2, 3), 3)[0] ==
        doctest::Approx(6.0 * 12.0));
  CHECK_THROWS_AS(hompoly_derivative(p, Eigen::Vector3d(1, 0, 0), x, 1),
                  DimensionMismatch);

  Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    const int m = rng.uniform_int(1, 3);
    const int j = rng.uniform_int(1, 4);
    const auto mono = oracle::random_monomials(m, j, rng);
    const HomPolyMap q = oracle::to_hompoly(m, j, mono);
    const Eigen::VectorXd zz = rng.uniform_vector(m, -1, 1);
    const Eigen::VectorXd xx = rng.uniform_vector(m, -1, 1);
    const double fd = oracle::fd1(
        [&](double s) { return oracle::poly(mono, zz + s * xx); }, 1e-3);
    CHECK(rel(hompoly_derivative(q, zz, xx, 1)[0], fd) <= 1e-6);
    const Eigen::VectorXd z2 = rng.uniform_vector(m, -1, 1);
    const double top = hompoly_derivative(q, zz, xx, j)[0];
    CHECK(std::abs(top - hompoly_derivative(q, z2, xx, j)[0]) <=
          1e-12 * std::max(1.0, std::abs(top)));
    CHECK(rel(top, factorial(j) * oracle::poly(mono, xx)) <= 1e-10);
    CHECK(hompoly_derivative(q, zz, xx, j + 1).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("composition with a linear map") {
  const HomPolyMap p = oracle::to_hompoly(2, 2, {{{2, 0}, 1.0}});
  const HomPolyMap id = compose_linear(p, Eigen::Matrix2d::Identity());
  CHECK((id.coefficients() - p.coefficients()).norm() == 0.0);
  const HomPolyMap scaled = compose_linear(p, Eigen::Vector2d(2, 1).asDiagonal());
  CHECK(scaled.coeff(0, MultiIndex({2, 0})) == 4.0);
  CHECK(scaled.coeff(0, MultiIndex({1, 1})) == 0.0);
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  const HomPolyMap xy = oracle::to_hompoly(2, 2, {{{1, 1}, 1.0}});
  CHECK((compose_linear(xy, swap).coefficients() - xy.coefficients()).norm() == 0.0);
  CHECK_THROWS_AS(compose_linear(p, Eigen::Matrix3d::Identity()), DimensionMismatch);

  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const int m = rng.uniform_int(1, 4);
    const int j = rng.uniform_int(1, 4);
    const auto mono = oracle::random_monomials(m, j, rng);
    const HomPolyMap q = oracle::to_hompoly(m, j, mono);
    const Eigen::MatrixXd a = Eigen::MatrixXd::Random(m, m);
    const HomPolyMap qa = compose_linear(q, a);
    CHECK(qa.degree() == j);
    const Eigen::VectorXd x = rng.uniform_vector(m, -1, 1);
    const Eigen::VectorXd ax = a * x;
    CHECK(std::abs(qa(x)[0] - oracle::poly(mono, ax)) <=
          1e-10 * (1 + std::abs(oracle::poly(mono, ax))));
    const Eigen::VectorXd via_matrix = ln_matrix(a, j, 1) * q.coefficient_vector();
    CHECK((via_matrix - qa.coefficient_vector()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("L_n matrix") {
  CHECK(ln_matrix(Eigen::Matrix3d::Identity(), 3, 2)
            .isApprox(Eigen::MatrixXd::Identity(2 * basis_size(3, 3), 2 * basis_size(3, 3))));
  const Eigen::MatrixXd l = ln_matrix(Eigen::Vector2d(3, 5).asDiagonal(), 2, 1);
  Eigen::MatrixXd want = Eigen::Vector3d(9, 15, 25).asDiagonal();
  CHECK((l - want).norm() == 0.0);

  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const int m = rng.uniform_int(1, 4);
    const int n = rng.uniform_int(1, 4);
    std::vector<double> lam;
    for (int i = 0; i < m; ++i) lam.push_back(rng.uniform(-2.0, 2.0));
    Eigen::VectorXd dv(m);
    for (int i = 0; i < m; ++i) dv[i] = lam[i];
    const Eigen::MatrixXd ln = ln_matrix(dv.asDiagonal(), n, 1);
    CHECK(ln.isDiagonal());
    std::vector<double> got;
    for (int i = 0; i < ln.rows(); ++i) got.push_back(ln(i, i));
    std::sort(got.begin(), got.end());
    const std::vector<double> want_eigs = oracle::eigen_monomials(lam, n);
    REQUIRE(got.size() == want_eigs.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::abs(got[i] - want_eigs[i]) <= 1e-14 * (1 + std::abs(want_eigs[i])));
    }
  }
}

TEST_CASE("continuity bound") {
  CHECK(continuity_bound(HomPolyMap(2, 1, 3)) == 0.0);
  const HomPolyMap sq = oracle::to_hompoly(2, 2, {{{2, 0}, 1.0}});
  CHECK(continuity_bound(sq) >= 1.0);
  const HomPolyMap xy = oracle::to_hompoly(2, 2, {{{1, 1}, 1.0}});
  CHECK(continuity_bound(xy) >= 0.5);

  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    const int m = rng.uniform_int(1, 3);
    const int j = rng.uniform_int(1, 4);
    const auto mono = oracle::random_monomials(m, j, rng);
    const HomPolyMap q = oracle::to_hompoly(m, j, mono);
    const double c = continuity_bound(q);
    for (int i = 0; i < 50; ++i) {
      const Eigen::VectorXd x = rng.uniform_vector(m, -3, 3);
      const double xs = x.cwiseAbs().maxCoeff();
      CHECK(std::abs(q(x)[0]) <= c * std::pow(xs, j) * (1 + 1e-12));
      for (int n = 1; n <= j; ++n) {
        const Eigen::VectorXd z = rng.uniform_vector(m, -1, 1);
        const Eigen::VectorXd u = rng.uniform_vector(m, -1, 1);
        CHECK(std::abs(hompoly_derivative(q, z, u, n)[0]) <=
              derivative_bound(q, n) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("coefficient vectors round trip") {
  Rng rng(13);
  Eigen::MatrixXd c(2, basis_size(3, 2));
  for (int i = 0; i < c.size(); ++i) c(i) = rng.uniform(-1, 1);
  const HomPolyMap p(3, 2, c);
  const HomPolyMap back =
      HomPolyMap::from_coefficient_vector(3, 2, 2, p.coefficient_vector());
  CHECK((back.coefficients() - c).norm() == 0.0);
  CHECK(p.coefficient_vector().head(basis_size(3, 2)) == c.row(0).transpose());
}
