#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "blidkit/cohomo.hpp"
#include "blidkit/errors.hpp"
#include "blidkit/random.hpp"

namespace blidkit {

namespace {

// Degree-n multi-indices closest to resonance: every p within tol, or the
// minimizers when none is.
std::pair<std::vector<std::vector<int>>, std::vector<double>> nearest_resonances(
    const std::vector<std::complex<double>>& eig, int n, double tol) {
  std::vector<std::vector<int>> idx;
  std::vector<double> res;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Resonance> all =
      check_resonances(eig, n, std::numeric_limits<double>::infinity());
  for (const Resonance& r : all) {
    if (r.index.degree() == n) best = std::min(best, r.residual);
  }
  const double cut = std::max(tol, best * (1.0 + 1e-9));
  for (const Resonance& r : all) {
    if (r.index.degree() == n && r.residual <= cut) {
      idx.push_back(r.index.exponents());
      res.push_back(r.residual);
    }
  }
  return {idx, res};
}

}  // namespace

HomPolyMap solve_formal(const Eigen::MatrixXd& a, const HomPolyMap& p,
                        double tol, FormalDiagnostics* diag) {
  const int n = p.degree();
  if (n < 1) throw DegreeTooHigh("solve_formal needs degree >= 1");
  if (a.rows() != a.cols() || a.rows() != p.dim()) {
    throw DimensionMismatch("matrix size does not match the polynomial");
  }
  const Eigen::MatrixXd l = ln_matrix(a, n, p.codim());
  const Eigen::MatrixXd sys =
      l - Eigen::MatrixXd::Identity(l.rows(), l.cols());
  const Eigen::VectorXd rhs = p.coefficient_vector();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(sys,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_min = sigma.minCoeff();
  const double cut = tol * (1.0 + rhs.norm());
  // Minimum-norm solution with the numerically singular directions dropped.
  // A right side with no component along them is still solvable exactly.
  Eigen::VectorXd proj = svd.matrixU().transpose() * rhs;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    proj[i] = sigma[i] > cut ? proj[i] / sigma[i] : 0.0;
  }
  const Eigen::VectorXd sol = svd.matrixV() * proj;
  if (sigma_min <= cut && (sys * sol - rhs).norm() > cut) {
    auto [idx, res] = nearest_resonances(eigenvalues(a), n, 1e-8);
    std::string list;
    for (const auto& e : idx) {
      list += (list.empty() ? "" : " ") + MultiIndex(e).to_string();
    }
    throw SingularResonance("L_n - I is singular at degree " +
                                std::to_string(n) + " (sigma_min " +
                                std::to_string(sigma_min) +
                                ") and the right side is not in its range;"
                                " resonant p: " + list,
                            idx, res);
  }
  HomPolyMap q =
      HomPolyMap::from_coefficient_vector(p.dim(), p.codim(), n, sol);

  const double sys_res = (sys * sol - rhs).cwiseAbs().maxCoeff();
  const HomPolyMap diff = compose_linear(q, a) - q - p;
  Rng rng(0x5eed);
  double round = 0.0;
  for (int i = 0; i < 16; ++i) {
    const Eigen::VectorXd x = rng.in_ball(p.dim(), 1.0);
    round = std::max(round, diff(x).cwiseAbs().maxCoeff());
  }
  const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  if (sys_res > tol * scale || round > tol * scale) {
    throw BoundViolation("formal solution at degree " + std::to_string(n) +
                         " misses the equation by " +
                         std::to_string(std::max(sys_res, round)));
  }
  if (diag) *diag = {sigma_min, sys_res, round};
  return q;
}

double taylor_sum(const std::vector<HomPolyMap>& terms,
                  const Eigen::VectorXd& x) {
  double acc = 0.0;
  for (const HomPolyMap& p : terms) acc += p(x)[0] / factorial(p.degree());
  return acc;
}

LocalGrowth polynomial_growth(const std::vector<HomPolyMap>& terms,
                              double radius) {
  LocalGrowth g;
  g.radius = radius;
  int low = std::numeric_limits<int>::max();
  for (const HomPolyMap& p : terms) {
    if (p.is_zero()) continue;
    if (p.degree() == 0) {
      throw BoundViolation("f(0) != 0: the polynomial has a constant term");
    }
    low = std::min(low, p.degree());
  }
  if (low == std::numeric_limits<int>::max()) return g;
  g.exponent = low;
  for (const HomPolyMap& p : terms) {
    if (p.is_zero()) continue;
    g.constant += continuity_bound(p) / factorial(p.degree()) *
                  std::pow(radius, p.degree() - low);
  }
  return g;
}

SeriesValue solve_series(const HyperbolicSplitting& split, const ScalarField& f,
                         const LocalGrowth& growth, const Eigen::VectorXd& x,
                         SeriesDirection direction, double tol) {
  const bool contract = direction == SeriesDirection::contraction;
  if (contract && split.dim_minus() > 0) {
    throw NotContractive("A has eigenvalues outside the unit circle");
  }
  if (!contract && split.dim_plus() > 0) {
    throw NotExpansive("A has eigenvalues inside the unit circle");
  }
  if (x.size() != split.dim()) {
    throw DimensionMismatch("point dimension does not match A");
  }
  const double q = split.q();
  const double n0 = contract ? split.norm_plus(x) : split.norm_minus(x);
  const double qn = std::pow(q, growth.exponent);
  constexpr int kMaxTerms = 1000000;

  // First k with q^k N(x) inside the growth ball and a small enough tail.
  const int first = contract ? 0 : 1;
  int kstar = first;
  double reach = n0 * std::pow(q, first);
  auto tail = [&](double r) {
    return growth.constant * std::pow(r, growth.exponent) / (1.0 - qn);
  };
  while (reach > growth.radius || tail(reach) > tol) {
    if (reach == 0.0) break;
    reach *= q;
    if (++kstar > kMaxTerms) {
      throw SeriesDiverged("series needs more than " +
                           std::to_string(kMaxTerms) + " terms");
    }
  }

  const Eigen::MatrixXd& step = contract ? split.matrix() : split.inverse();
  Eigen::VectorXd y = contract ? x : Eigen::VectorXd(step * x);
  double sum = 0.0;
  for (int k = first; k < kstar; ++k) {
    sum += f(y);
    y = step * y;
  }
  SeriesValue out;
  out.value = contract ? -sum : sum;
  out.terms = kstar;
  out.tail_bound = reach == 0.0 ? 0.0 : tail(reach);
  return out;
}

SeriesValue solve_series(const Eigen::MatrixXd& a,
                         const std::vector<HomPolyMap>& terms,
                         const Eigen::VectorXd& x, SeriesDirection direction,
                         double tol) {
  const HyperbolicSplitting split = split_hyperbolic(a);
  const double n0 = direction == SeriesDirection::contraction
                        ? split.norm_plus(x)
                        : split.norm_minus(x);
  const LocalGrowth growth = polynomial_growth(terms, std::max(n0, 1e-300));
  auto f = [&terms](const Eigen::VectorXd& y) { return taylor_sum(terms, y); };
  return solve_series(split, f, growth, x, direction, tol);
}

}  // namespace blidkit
