#include "blidkit/blid.hpp"

#include <cmath>
#include <string>

#include "blidkit/errors.hpp"

namespace blidkit {

Blid<Eigen::VectorXd> radial_blid(const ScalarCutoff& tau, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidRadii("radial blid scale must be positive and finite");
  }
  const double inv_c2 = 1.0 / (scale * scale);
  Blid<Eigen::VectorXd> h;
  h.map = [tau, inv_c2](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const double w = tau.value(x.squaredNorm() * inv_c2);
    if (w == 1.0) return x;
    return w * x;
  };
  h.identity_radius = scale * std::sqrt(tau.inner_radius());
  h.bound = scale * std::sqrt(tau.outer_radius());
  return h;
}

Blid<Eigen::VectorXd> radial_blid_with_bound(const ScalarCutoff& tau,
                                             double bound) {
  return radial_blid(tau, bound / std::sqrt(tau.outer_radius()));
}

Blid<GridFunction> c01_blid(const ScalarCutoff& h) {
  Blid<GridFunction> out;
  out.map = [h](const GridFunction& x) { return blid_c01(h, x); };
  out.identity_radius = h.inner_radius();
  out.bound = h.outer_radius();
  return out;
}

Projector::Projector(Eigen::MatrixXd pi) : pi_(std::move(pi)) {
  if (pi_.rows() != pi_.cols()) {
    throw InvalidProjector("projector must be square");
  }
  const double err = (pi_ * pi_ - pi_).cwiseAbs().maxCoeff();
  if (pi_.size() > 0 && err > 1e-10) {
    throw InvalidProjector("pi^2 != pi (max entry error " +
                           std::to_string(err) + ")");
  }
}

bool Projector::contains(const Eigen::VectorXd& x, double tol) const {
  return (pi_ * x - x).norm() <= tol;
}

Projector Projector::complement() const {
  return Projector(Eigen::MatrixXd::Identity(dim(), dim()) - pi_);
}

Eigen::VectorXd restrict_blid(const Blid<Eigen::VectorXd>& h,
                              const Projector& pi, const Eigen::VectorXd& x) {
  if (x.size() != pi.dim()) {
    throw DimensionMismatch("vector and projector sizes differ");
  }
  if (!pi.contains(x)) {
    throw NotInImage("argument is not in Im(pi): |pi x - x| = " +
                     std::to_string((pi.apply(x) - x).norm()));
  }
  return pi.apply(h(x));
}

}  // namespace blidkit
