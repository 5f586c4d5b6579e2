#include "blidkit/germ.hpp"

#include <cmath>
#include <limits>

#include "blidkit/numdiff.hpp"

namespace blidkit {

void JetSpec::validate() const {
  if (dim < 1 || dim > kMaxJetDim) {
    throw DimensionMismatch("jet dimension must be in [1, 3], got " +
                            std::to_string(dim));
  }
  if (order < 0 || order > kMaxJetOrder) {
    throw DegreeTooHigh("jet order must be in [0, 5], got " +
                        std::to_string(order));
  }
  if (static_cast<int>(polys.size()) != order + 1) {
    throw DimensionMismatch("a jet of order J needs J+1 polynomials");
  }
  for (int j = 0; j <= order; ++j) {
    const HomPolyMap& p = polys[j];
    if (p.degree() != j || p.dim() != dim || p.codim() != polys[0].codim()) {
      throw DimensionMismatch("jet polynomial " + std::to_string(j) +
                              " has the wrong shape");
    }
  }
}

double borel_scale(const HomPolyMap& pj) {
  const int j = pj.degree();
  if (j == 0 || pj.is_zero()) return 1.0;
  double worst = -1.0;
  int worst_n = 0;
  for (int n = 0; n < j; ++n) {
    const double c = derivative_bound(pj, n) / factorial(j);
    if (c > worst) {
      worst = c;
      worst_n = n;
    }
  }
  const double base = std::ldexp(1.0, -j) / (1.0 + worst);
  return std::min(1.0, std::pow(base, 1.0 / (j - worst_n)));
}

RealizedJet realize_jet(const JetSpec& jet, const ScalarCutoff& tau) {
  jet.validate();
  const int order = jet.order;
  std::vector<double> scales(order + 1, 1.0);
  std::vector<double> bounds(order + 1, 0.0);
  double identity = std::numeric_limits<double>::infinity();
  const double reach = std::sqrt(tau.outer_radius());
  for (int j = 0; j <= order; ++j) {
    const HomPolyMap& p = jet.polys[j];
    scales[j] = borel_scale(p);
    bounds[j] = continuity_bound(p) * std::pow(scales[j] * reach, j) /
                factorial(j);
    if (j >= 1 && !p.is_zero()) {
      identity = std::min(identity, scales[j] * std::sqrt(tau.inner_radius()));
    }
  }

  auto fn = [polys = jet.polys, scales, tau](const Eigen::VectorXd& x) {
    const int order = static_cast<int>(polys.size()) - 1;
    const double r2 = x.squaredNorm();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(polys[0].codim());
    for (int j = order; j >= 1; --j) {
      if (polys[j].is_zero()) continue;
      const double eps = scales[j];
      const double w = tau.value(r2 / (eps * eps));
      if (w == 0.0) continue;
      const Eigen::VectorXd y = (w == 1.0) ? x : Eigen::VectorXd(w * x);
      acc += polys[j](y) / factorial(j);
    }
    acc += polys[0](x);
    return acc;
  };

  double total = 0.0;
  for (double b : bounds) total += b;
  RealizedJet out{GlobalMap<Eigen::VectorXd, Eigen::VectorXd>(fn, total,
                                                              identity),
                  scales, bounds, identity};
  return out;
}

namespace {

double default_step(std::optional<double> identity_radius,
                    const Eigen::VectorXd& dir, int n) {
  const double len = dir.norm() > 0.0 ? dir.norm() : 1.0;
  const double r = (identity_radius && std::isfinite(*identity_radius))
                       ? *identity_radius
                       : 0.1;
  // Widest stencil offset is n h / 2 along dir.
  return 1.8 * r / (std::max(n, 1) * len);
}

template <class Value>
Value extract(const GlobalMap<Eigen::VectorXd, Value>& f,
              const Eigen::VectorXd& dir, int n, const JetExtractOptions& opts) {
  if (n < 0 || n > kMaxJetOrder) {
    throw OrderTooHigh("jet_extract supports orders 0..5, got " +
                       std::to_string(n));
  }
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(dir.size());
  if (n == 0) return f(origin);
  const double h = opts.step ? *opts.step
                             : default_step(f.identity_radius(), dir, n);
  return numdiff::directional_derivative(f, origin, dir, n, h, opts.levels);
}

}  // namespace

Eigen::VectorXd jet_extract(
    const GlobalMap<Eigen::VectorXd, Eigen::VectorXd>& f,
    const Eigen::VectorXd& dir, int n, const JetExtractOptions& opts) {
  return extract(f, dir, n, opts);
}

double jet_extract(const GlobalMap<Eigen::VectorXd, double>& f,
                   const Eigen::VectorXd& dir, int n,
                   const JetExtractOptions& opts) {
  return extract(f, dir, n, opts);
}

}  // namespace blidkit
