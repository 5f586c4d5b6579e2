#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "blidkit/blid.hpp"
#include "blidkit/errors.hpp"
#include "blidkit/gridfunction.hpp"
#include "blidkit/random.hpp"

using namespace blidkit;

namespace {

GridFunction random_grid(int g, double amp, Rng& rng) {
  GridFunction x(g);
  for (int i = 0; i <= g; ++i) x[i] = rng.uniform(-amp, amp);
  return x;
}

}  // namespace

TEST_CASE("grid function construction") {
  CHECK_THROWS_AS(GridFunction(1), DimensionMismatch);
  CHECK_THROWS_AS(GridFunction(std::vector<double>{1.0, 2.0}), DimensionMismatch);
  CHECK_THROWS_AS(GridFunction(std::vector<double>{1.0, NAN, 2.0}),
                  DimensionMismatch);
  const GridFunction x = GridFunction::sample(4, [](double t) { return t; });
  CHECK(x.grid_size() == 4);
  CHECK(x[2] == 0.5);
  CHECK_THROWS_AS(require_same_grid(GridFunction(4), GridFunction(5)),
                  GridMismatch);
}

TEST_CASE("sup norm") {
  CHECK(sup_norm(GridFunction(10)) == 0.0);
  CHECK(sup_norm(GridFunction::sample(10, [](double t) { return t; })) == 1.0);
  const GridFunction s = GridFunction::sample(
      1000, [](double t) { return std::sin(2 * std::numbers::pi * t); });
  CHECK(std::abs(sup_norm(s) - 1.0) <= 1e-4);
  CHECK(sup_norm(GridFunction::constant(5, -3.0)) == 3.0);
}

TEST_CASE("C[0,1] blid") {
  const ScalarCutoff h(1.0 / 3.0, 0.5);
  CHECK(blid_c01(h, GridFunction(8)) == GridFunction(8));
  const GridFunction small =
      GridFunction::sample(50, [](double t) { return 0.2 * std::cos(5 * t); });
  CHECK(blid_c01(h, small) == small);
  CHECK(blid_c01(h, GridFunction::constant(20, 10.0)) == GridFunction(20));

  Rng rng(3);
  for (int k = 0; k < 300; ++k) {
    const GridFunction x = random_grid(40, rng.uniform(0.0, 100.0), rng);
    const GridFunction y = blid_c01(h, x);
    CHECK(sup_norm(y) <= 0.5);
    for (int i = 0; i <= 40; ++i) CHECK(y[i] == scalar_blid_eval(h, x[i]));
    const GridFunction z = (0.33 / sup_norm(x)) * x;
    CHECK(blid_c01(h, z) == z);
  }
  const Blid<GridFunction> b = c01_blid(h);
  CHECK(b.identity_radius == 1.0 / 3.0);
  CHECK(b.bound == 0.5);
}

TEST_CASE("rescaled blid") {
  const ScalarCutoff tau(0.25, 1.0);
  const Blid<Eigen::VectorXd> h = radial_blid(tau);
  const double eps = 0.3;
  const Blid<Eigen::VectorXd> h1 = rescale_blid(h, eps);
  CHECK(h1.bound == eps);
  CHECK(h1.identity_radius == doctest::Approx(eps * 0.5));
  CHECK(h1(Eigen::Vector2d::Zero()).norm() == 0.0);
  const Eigen::Vector2d inside = Eigen::Vector2d(0.6, 0.8) * (eps * 0.5 / 2.0);
  CHECK((h1(inside) - inside).norm() <= 1e-15);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd x = rng.uniform_vector(3, -100 * eps, 100 * eps);
    CHECK(h1(x).norm() <= eps * (1 + 1e-15));
  }

  const Blid<GridFunction> c1 = rescale_blid(c01_blid(ScalarCutoff(1.0 / 3.0, 0.5)), 2.0);
  const GridFunction far = GridFunction::constant(10, 50.0);
  CHECK(sup_norm(c1(far)) <= 2.0);
  const GridFunction near = GridFunction::constant(10, 1.0);
  CHECK(c1(near) == near);
}

TEST_CASE("radial blid") {
  const ScalarCutoff tau(0.25, 1.0);
  const Blid<Eigen::VectorXd> h = radial_blid(tau, 2.0);
  CHECK(h.identity_radius == doctest::Approx(1.0));
  CHECK(h.bound == doctest::Approx(2.0));
  const Blid<Eigen::VectorXd> hb = radial_blid_with_bound(tau, 0.7);
  CHECK(hb.bound == doctest::Approx(0.7));
  CHECK_THROWS_AS(radial_blid(tau, 0.0), InvalidRadii);
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    const Eigen::VectorXd x = rng.uniform_vector(2, -10.0, 10.0);
    const Eigen::VectorXd y = h(x);
    CHECK(y.norm() <= 2.0);
    if (x.norm() < 1.0) CHECK(y == x);
    // Radial: the image is parallel to x.
    CHECK(std::abs(y[0] * x[1] - y[1] * x[0]) <= 1e-12 * (1 + x.squaredNorm()));
  }
}

TEST_CASE("segment blid") {
  const int g = 30;
  const GridFunction phi = GridFunction::sample(g, [](double t) { return t; });
  const GridFunction psi = GridFunction::sample(g, [](double t) { return 1 + t; });
  const SegmentSpec spec(phi, psi, 0.1, ScalarCutoff(0.05, 0.2));
  const GridFunction y = GridFunction::constant(g, -7.0);

  const GridFunction inside =
      GridFunction::sample(g, [](double t) { return t + 0.5 + 0.5 * std::sin(9 * t); });
  CHECK(blid_at_segment(spec, y, inside) == inside);
  const GridFunction far = GridFunction::constant(g, 100.0);
  CHECK(blid_at_segment(spec, y, far) == y);
  CHECK(blid_at_segment(spec, y, y) == y);
  CHECK_THROWS_AS(blid_at_segment(spec, GridFunction(g + 1), inside), GridMismatch);

  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const GridFunction x = random_grid(g, 50.0, rng);
    const GridFunction out = blid_at_segment(spec, y, x);
    for (int i = 0; i <= g; ++i) {
      // Output stays between y and the band widened by the cutoff support.
      CHECK(out[i] >= std::min(y[i], phi[i] - 0.1 - 0.2) - 1e-12);
      CHECK(out[i] <= std::max(y[i], psi[i] + 0.1 + 0.2) + 1e-12);
    }
  }
}

TEST_CASE("projector and restricted blid") {
  Eigen::Matrix2d p;
  p << 1.0, 1.0, 0.0, 0.0;
  const Projector pi(p);
  CHECK_THROWS_AS(Projector(Eigen::Matrix2d::Identity() * 2.0), InvalidProjector);
  CHECK_THROWS_AS(Projector(Eigen::MatrixXd::Zero(2, 3)), InvalidProjector);
  const Projector comp = pi.complement();
  CHECK((comp.matrix() * comp.matrix() - comp.matrix()).norm() <= 1e-15);

  const Blid<Eigen::VectorXd> h = radial_blid(ScalarCutoff(0.25, 1.0));
  CHECK(restrict_blid(h, pi, Eigen::Vector2d::Zero()).norm() == 0.0);
  const Eigen::Vector2d small(0.2, 0.0);
  CHECK(restrict_blid(h, pi, small) == small);
  const Eigen::Vector2d large(3.0, 0.0);
  const Eigen::VectorXd out = restrict_blid(h, pi, large);
  CHECK((out - p * h(large)).norm() <= 1e-15);
  CHECK((pi.apply(out) - out).norm() <= 1e-10);
  CHECK_THROWS_AS(restrict_blid(h, pi, Eigen::Vector2d(0.0, 1.0)), NotInImage);
  CHECK_THROWS_AS(restrict_blid(h, pi, Eigen::Vector3d(1.0, 0.0, 0.0)),
                  DimensionMismatch);
}

TEST_CASE("integral functional") {
  const ScalarCutoff h(1.0 / 3.0, 0.5);
  CHECK(integral_functional(GridFunction(10), false, h) == doctest::Approx(1.0));
  CHECK(integral_functional(GridFunction::constant(10, 0.5), false, h) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integral_functional(GridFunction::constant(10, 10.0), true, h) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(integral_functional(GridFunction::constant(10, 10.0), false, h),
                  PoleOnGrid);
  CHECK_THROWS_AS(integral_functional(GridFunction::constant(10, 1.0), false, h),
                  PoleOnGrid);

  // Trapezoid against the closed form of int_0^1 dt / (1 - t/2) = 2 ln 2.
  const GridFunction ray = GridFunction::sample(400, [](double t) { return 0.5 * t; });
  CHECK(integral_functional(ray, false, h) ==
        doctest::Approx(2 * std::log(2.0)).epsilon(1e-5));

  Rng rng(23);
  for (int k = 0; k < 200; ++k) {
    GridFunction x = random_grid(60, 1.0, rng);
    x = (rng.uniform(0.0, 0.333) / sup_norm(x)) * x;
    CHECK(integral_functional(x, true, h) == integral_functional(x, false, h));
    const GridFunction big = random_grid(60, 1000.0, rng);
    CHECK(std::isfinite(integral_functional(big, true, h)));
  }
}

TEST_CASE("CSV output") {
  std::ostringstream out;
  write_csv(out, GridFunction::sample(2, [](double t) { return 2 * t; }));
  const std::string s = out.str();
  CHECK(s.rfind("t,v\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}
