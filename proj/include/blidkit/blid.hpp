#pragma once

// Blid maps: globally defined, bounded self-maps that equal the identity on
// a ball around zero. A Blid carries its evaluator together with the
// identity radius n (H(x) = x for norm(x) < n) and a bound N
// (norm(H(x)) <= N for all x), both measured in the space's norm:
// Euclidean on R^m, sup-norm on grid functions.

#include <functional>

#include <Eigen/Core>

#include "blidkit/bump.hpp"
#include "blidkit/gridfunction.hpp"

namespace blidkit {

inline double norm(const Eigen::VectorXd& x) { return x.norm(); }

template <class Point>
struct Blid {
  std::function<Point(const Point&)> map;
  double identity_radius = 0.0;
  double bound = 0.0;

  Point operator()(const Point& x) const { return map(x); }
};

/// H_1(x) = (eps / N) H((N / eps) x). Identity on norm(x) < eps n / N,
/// bounded by eps. The returned blid holds a copy of H.
template <class Point>
Blid<Point> rescale_blid(const Blid<Point>& h, double eps) {
  const double big_n = h.bound;
  const double shrink = eps / big_n;
  const double grow = big_n / eps;
  Blid<Point> out;
  out.map = [h, shrink, grow](const Point& x) {
    Point scaled = x;
    scaled *= grow;
    Point y = h(scaled);
    y *= shrink;
    return y;
  };
  out.identity_radius = eps * h.identity_radius / big_n;
  out.bound = eps;
  return out;
}

/// H(x) = tau(|x|^2 / c^2) x on R^m (any subspace is invariant).
/// Identity radius c sqrt(a), bound c sqrt(b).
Blid<Eigen::VectorXd> radial_blid(const ScalarCutoff& tau, double scale = 1.0);

/// Radial blid scaled so that its bound equals `bound`.
Blid<Eigen::VectorXd> radial_blid_with_bound(const ScalarCutoff& tau,
                                             double bound);

/// Pointwise C[0,1] blid H(x)(t) = h(x(t)) x(t); identity radius a, bound b.
Blid<GridFunction> c01_blid(const ScalarCutoff& h);

/// Bounded projector on R^m. Throws InvalidProjector unless square and
/// idempotent within 1e-10 entrywise.
class Projector {
 public:
  explicit Projector(Eigen::MatrixXd pi);

  const Eigen::MatrixXd& matrix() const noexcept { return pi_; }
  int dim() const noexcept { return static_cast<int>(pi_.rows()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return pi_ * x; }
  bool contains(const Eigen::VectorXd& x, double tol = 1e-10) const;
  /// Complementary projector id - pi onto Ker(pi).
  Projector complement() const;

 private:
  Eigen::MatrixXd pi_;
};

/// pi(H(x)) for x in Im(pi). Throws NotInImage when |pi x - x| > 1e-10.
Eigen::VectorXd restrict_blid(const Blid<Eigen::VectorXd>& h,
                              const Projector& pi, const Eigen::VectorXd& x);

}  // namespace blidkit
