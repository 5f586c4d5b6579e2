#include <doctest.h>

#include <cmath>

#include "blidkit/bump.hpp"
#include "blidkit/errors.hpp"
#include "oracles.hpp"

using namespace blidkit;

TEST_CASE("cutoff rejects bad radii") {
  CHECK_THROWS_AS(make_cutoff(0.0, 1.0), InvalidRadii);
  CHECK_THROWS_AS(make_cutoff(-1.0, 1.0), InvalidRadii);
  CHECK_THROWS_AS(make_cutoff(0.5, 0.5), InvalidRadii);
  CHECK_THROWS_AS(make_cutoff(0.6, 0.5), InvalidRadii);
  CHECK_THROWS_AS(make_cutoff(0.1, INFINITY), InvalidRadii);
  CHECK_THROWS_AS(make_cutoff(NAN, 1.0), InvalidRadii);
}

TEST_CASE("cutoff values") {
  const ScalarCutoff tau = make_cutoff(1.0 / 3.0, 0.5);
  CHECK(tau(0.0) == 1.0);
  CHECK(tau(1.0 / 3.0) == 1.0);
  CHECK(tau(0.5) == 0.0);
  CHECK(tau(0.6) == 0.0);
  CHECK(tau(-0.6) == 0.0);
  const double mid = 0.5 * (1.0 / 3.0 + 0.5);
  CHECK(tau(mid) > 0.0);
  CHECK(tau(mid) < 1.0);
  CHECK(tau(mid) == doctest::Approx(oracle::tau(1.0 / 3.0, 0.5, mid)).epsilon(1e-14));
}

TEST_CASE("cutoff agrees with the exp-glue quotient") {
  for (auto [a, b] : {std::pair{1.0 / 3.0, 0.5}, {0.25, 1.0}, {1.0, 3.0}}) {
    const ScalarCutoff tau(a, b);
    for (int i = 0; i <= 400; ++i) {
      const double s = -1.2 * b + 2.4 * b * i / 400.0;
      CHECK(tau(s) == doctest::Approx(oracle::tau(a, b, s)).epsilon(1e-13));
    }
  }
}

TEST_CASE("cutoff is even, in [0,1], and non-increasing on [a,b]") {
  const ScalarCutoff tau(1.0 / 3.0, 0.5);
  double prev = 1.0;
  for (int i = 0; i <= 5000; ++i) {
    const double s = 0.7 * i / 5000.0;
    const double v = tau(s);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(tau(-s) == v);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("cutoff derivatives") {
  const ScalarCutoff tau(1.0 / 3.0, 0.5);
  CHECK(cutoff_eval(tau, 0.6, 0) == 0.0);
  CHECK(cutoff_eval(tau, 0.1, 1) == 0.0);
  CHECK(cutoff_eval(tau, 0.4, 1) < 0.0);
  CHECK_THROWS_AS(cutoff_eval(tau, 0.4, 5), OrderTooHigh);

  SUBCASE("first derivative matches FD of the oracle on [0, 2b]") {
    for (int i = 0; i <= 500; ++i) {
      const double s = 1.0 * i / 500.0;
      const double fd = oracle::fd1(
          [&](double h) { return oracle::tau(1.0 / 3.0, 0.5, s + h); }, 1e-5);
      CHECK(std::abs(cutoff_eval(tau, s, 1) - fd) <= 1e-6);
    }
  }
  SUBCASE("higher orders match differences of the next lower order") {
    for (int k = 2; k <= 4; ++k) {
      for (double s : {0.36, 0.4, 0.42, 0.45}) {
        const double fd = oracle::fd1(
            [&](double h) { return cutoff_eval(tau, s + h, k - 1); }, 1e-5);
        const double got = cutoff_eval(tau, s, k);
        CHECK(std::abs(got - fd) <= 1e-6 * (1.0 + std::abs(got)));
      }
    }
  }
  SUBCASE("derivatives vanish continuously at the plateau edges") {
    for (int k = 1; k <= 4; ++k) {
      for (double edge : {1.0 / 3.0, 0.5}) {
        CHECK(std::abs(cutoff_eval(tau, edge - 1e-3, k)) < 1e-6);
        CHECK(std::abs(cutoff_eval(tau, edge + 1e-3, k)) < 1e-6);
      }
    }
  }
}

TEST_CASE("scalar blid") {
  const ScalarCutoff h(1.0 / 3.0, 0.5);
  CHECK(scalar_blid_eval(h, 0.2) == 0.2);
  CHECK(scalar_blid_eval(h, 0.6) == 0.0);
  CHECK(scalar_blid_eval(h, 0.0) == 0.0);
  for (int i = 0; i <= 20000; ++i) {
    const double s = -2.0 + 4.0 * i / 20000.0;
    const double v = scalar_blid_eval(h, s);
    CHECK(std::abs(v) <= 0.5);
    if (std::abs(s) <= 1.0 / 3.0) CHECK(v == s);
    if (std::abs(s) >= 0.5) CHECK(v == 0.0);
  }
  for (double s : {0.1, 0.35, 0.4, 0.48}) {
    const double fd =
        oracle::fd1([&](double e) { return scalar_blid_eval(h, s + e); }, 1e-4);
    CHECK(scalar_blid_derivative(h, s) == doctest::Approx(fd).epsilon(1e-6));
  }
}
