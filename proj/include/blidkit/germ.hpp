#pragma once

// Germ extension and jet realization.
//
// A LocalMap is a representative of a germ at zero: an evaluator that may
// only be queried on the closed ball of its validity radius. A GlobalMap is
// defined everywhere. Extension either multiplies by a bump (R^m only) or
// precomposes with a rescaled blid, which works on any space that has one.

#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "blidkit/blid.hpp"
#include "blidkit/bump.hpp"
#include "blidkit/errors.hpp"
#include "blidkit/polyalg.hpp"

namespace blidkit {

inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

template <class Point, class Value>
class LocalMap {
 public:
  using Fn = std::function<Value(const Point&)>;

  LocalMap(Fn f, double validity_radius,
           std::optional<double> sup_bound = std::nullopt)
      : f_(std::move(f)), radius_(validity_radius), sup_bound_(sup_bound) {
    if (!(radius_ > 0.0)) {
      throw InvalidRadii("validity radius must be positive");
    }
  }

  double validity_radius() const noexcept { return radius_; }
  /// Certified sup of |f| over the closed validity ball, when known.
  std::optional<double> sup_bound() const noexcept { return sup_bound_; }

  /// Throws OutsideValidity when norm(x) exceeds the validity radius.
  Value operator()(const Point& x) const {
    const double r = norm(x);
    if (r > radius_ * (1.0 + 1e-12)) {
      throw OutsideValidity("local map queried at norm " + std::to_string(r) +
                            " > validity radius " + std::to_string(radius_));
    }
    return f_(x);
  }

 private:
  Fn f_;
  double radius_;
  std::optional<double> sup_bound_;
};

template <class Point, class Value>
class GlobalMap {
 public:
  using Fn = std::function<Value(const Point&)>;

  explicit GlobalMap(Fn f, std::optional<double> sup_bound = std::nullopt,
                     std::optional<double> identity_radius = std::nullopt)
      : f_(std::move(f)),
        sup_bound_(sup_bound),
        identity_radius_(identity_radius) {}

  Value operator()(const Point& x) const { return f_(x); }

  std::optional<double> sup_bound() const noexcept { return sup_bound_; }
  /// Radius of a ball on which the map agrees with the germ it represents.
  std::optional<double> identity_radius() const noexcept {
    return identity_radius_;
  }

 private:
  Fn f_;
  std::optional<double> sup_bound_;
  std::optional<double> identity_radius_;
};

/// F(x) = delta(x) f(x) with delta(x) = tau(|x|^2): equal to f where
/// |x|^2 <= a and zero once |x|^2 >= b. Requires sqrt(b) strictly inside the
/// validity radius, else throws SupportExceedsValidity.
template <class Value>
GlobalMap<Eigen::VectorXd, Value> extend_by_bump(
    const LocalMap<Eigen::VectorXd, Value>& f, const ScalarCutoff& tau) {
  const double support = std::sqrt(tau.outer_radius());
  if (!(support < f.validity_radius())) {
    throw SupportExceedsValidity(
        "bump support radius " + std::to_string(support) +
        " is not inside the validity radius " +
        std::to_string(f.validity_radius()));
  }
  auto fn = [f, tau](const Eigen::VectorXd& x) -> Value {
    const double r2 = x.squaredNorm();
    if (r2 >= tau.outer_radius()) {
      if constexpr (std::is_arithmetic_v<Value>) {
        return Value(0);
      } else {
        Value zero = f(Eigen::VectorXd::Zero(x.size()));
        zero.setZero();
        return zero;
      }
    }
    const double w = tau.value(r2);
    if (w == 1.0) return f(x);
    Value v = f(x);
    v *= w;
    return v;
  };
  return GlobalMap<Eigen::VectorXd, Value>(fn, f.sup_bound(),
                                           std::sqrt(tau.inner_radius()));
}

/// F(x) = f(H_1(x)) with H_1(x) = (eps/N) H((N/eps) x), eps the validity
/// radius of f and N the bound of H. F = f on norm(x) < eps n / N, and
/// F inherits the sup bound of f over the eps-ball.
template <class Point, class Value>
GlobalMap<Point, Value> extend_germ(const LocalMap<Point, Value>& f,
                                    const Blid<Point>& h) {
  const Blid<Point> h1 = rescale_blid(h, f.validity_radius());
  auto fn = [f, h1](const Point& x) { return f(h1(x)); };
  return GlobalMap<Point, Value>(fn, f.sup_bound(), h1.identity_radius);
}

/// Truncated jet {P_0, ..., P_J}; polys[j] has degree j.
struct JetSpec {
  int dim = 0;
  int order = 0;  // J
  std::vector<HomPolyMap> polys;

  /// Throws DimensionMismatch / DegreeTooHigh on inconsistent data.
  void validate() const;
  int codim() const { return polys.empty() ? 1 : polys.front().codim(); }
};

/// Result of realizing a jet: the global map plus the data that certifies
/// it.
struct RealizedJet {
  GlobalMap<Eigen::VectorXd, Eigen::VectorXd> map;
  std::vector<double> scales;          // eps_j
  std::vector<double> summand_bounds;  // sup of (1/j!) P_j(H_j(x))
  double identity_radius = 0.0;        // f is exactly sum_j P_j / j! inside
};

inline constexpr int kMaxJetOrder = 5;
inline constexpr int kMaxJetDim = 3;

/// Scale rule for the j-th summand of the realized jet:
///   eps_j = min(1, (2^-j / (1 + max_{n<j} chat_{j,n}))^(1/(j-n*)))
/// with n* the maximizing n and chat_{j,n} = derivative_bound(P_j, n) / j!,
/// the certified C^n bound of the summand (1/j!) P_j on the unit ball.
/// eps_0 = 1, and a zero P_j gets eps_j = 1.
double borel_scale(const HomPolyMap& pj);

/// f(x) = sum_{j<=J} (1/j!) P_j(H_j(x)), H_j(x) = eps_j H(x/eps_j) with the
/// radial blid H(x) = tau(|x|^2) x. Requires dim <= 3 and J <= 5.
RealizedJet realize_jet(const JetSpec& jet, const ScalarCutoff& tau);

struct JetExtractOptions {
  /// Base finite-difference step. When unset, it is derived from the map's
  /// identity radius (or 0.1 if the map has none) so that the widest
  /// stencil stays inside that radius.
  std::optional<double> step;
  int levels = 2;
};

/// n-th directional derivative of F at 0 along dir, by central differences
/// with Richardson extrapolation. Throws OrderTooHigh for n > 5.
Eigen::VectorXd jet_extract(const GlobalMap<Eigen::VectorXd, Eigen::VectorXd>& f,
                            const Eigen::VectorXd& dir, int n,
                            const JetExtractOptions& opts = {});
double jet_extract(const GlobalMap<Eigen::VectorXd, double>& f,
                   const Eigen::VectorXd& dir, int n,
                   const JetExtractOptions& opts = {});

}  // namespace blidkit
