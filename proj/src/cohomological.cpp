#include <algorithm>
#include <cmath>
#include <string>

#include "blidkit/cohomo.hpp"
#include "blidkit/errors.hpp"
#include "blidkit/random.hpp"

namespace blidkit {

double FlatTerm::operator()(const Eigen::VectorXd& x) const {
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) return 0.0;
  return std::exp(-1.0 / r2) * coeff.dot(x);
}

void CohomologicalProblem::validate() const {
  const int m = static_cast<int>(a.rows());
  if (m < 1 || a.cols() != m) {
    throw DimensionMismatch("A must be a nonempty square matrix");
  }
  if (degree_cap < 1 || degree_cap > kMaxPolyDegree) {
    throw DegreeTooHigh("degree cap must be in [1, " +
                        std::to_string(kMaxPolyDegree) + "]");
  }
  for (const HomPolyMap& p : terms) {
    if (p.dim() != m || p.codim() != 1) {
      throw DimensionMismatch("term of degree " + std::to_string(p.degree()) +
                              " must map R^" + std::to_string(m) + " to R");
    }
    if (p.degree() > degree_cap) {
      throw DegreeTooHigh("term of degree " + std::to_string(p.degree()) +
                          " exceeds the degree cap " +
                          std::to_string(degree_cap));
    }
    if (p.degree() == 0 && !p.is_zero()) {
      throw BoundViolation("f(0) != 0: the equation has no solution");
    }
  }
  if (flat_term) {
    if (flat_term->kind != "exp_flat") {
      throw DimensionMismatch("unknown flat term kind '" + flat_term->kind +
                              "'");
    }
    if (flat_term->coeff.size() != m) {
      throw DimensionMismatch("flat term coefficient has the wrong length");
    }
  }
  if (!(tol > 0.0)) throw BoundViolation("tolerance must be positive");
}

double CohomologicalProblem::f(const Eigen::VectorXd& x) const {
  double v = taylor_sum(terms, x);
  if (flat_term) v += (*flat_term)(x);
  return v;
}

CohomologicalSolution solve_cohomological(const CohomologicalProblem& problem,
                                          const SolveOptions& opts) {
  problem.validate();
  const int m = problem.dim();
  const Eigen::MatrixXd a = problem.a;
  const HyperbolicSplitting split = split_hyperbolic(a, opts.margin);

  CohomologicalSolution out;
  SolveReport& rep = out.report;
  rep.q = split.q();
  rep.horizon = split.horizon();
  rep.eigenvalues = split.eigenvalues();
  rep.resonances =
      check_resonances(rep.eigenvalues, problem.degree_cap, opts.resonance_tol);

  std::vector<HomPolyMap> formal;
  for (const HomPolyMap& p : problem.terms) {
    if (p.degree() == 0) continue;
    DegreeReport d;
    d.degree = p.degree();
    formal.push_back(solve_formal(a, p, problem.tol, &d.formal));
    rep.degrees.push_back(d);
  }
  out.formal = formal;
  auto g0 = [formal](const Eigen::VectorXd& x) {
    return taylor_sum(formal, x);
  };
  const std::vector<HomPolyMap> terms = problem.terms;
  auto f_poly = [terms](const Eigen::VectorXd& x) {
    return taylor_sum(terms, x);
  };

  ScalarField g = g0;
  if (problem.flat_term) {
    // Right side left over by the formal part; flat at the origin.
    auto f0 = [g0, a, problem](const Eigen::VectorXd& x) {
      return problem.f(x) - g0(a * x) + g0(x);
    };
    const ScalarCutoff tau(0.25, 1.0);
    const Blid<Eigen::VectorXd> h_local =
        radial_blid(tau, opts.local_radius / std::sqrt(tau.inner_radius()));
    FlatLocalOptions local;
    local.tol = problem.tol;
    const LocalSolution w = solve_flat_local(f0, split, h_local, local);
    const ScalarField wf = w.w;
    auto gamma0 = [g0, wf](const Eigen::VectorXd& x) { return g0(x) + wf(x); };

    const double delta = w.radius;
    const Blid<Eigen::VectorXd> h_minus =
        radial_blid_with_bound(tau, 0.5 * delta);
    GlobalizeOptions gopts = opts.global;
    gopts.samples = 0;
    gopts.seed = opts.seed;
    GlobalSolution global =
        globalize(gamma0, delta, problem, split, h_minus, gopts);
    rep.local_residual = global.report.local_residual;
    rep.global = global.report;
    g = global.g;
  }
  out.g = g;

  Rng rng(opts.seed);
  for (int i = 0; i < opts.samples; ++i) {
    const Eigen::VectorXd x = rng.uniform_vector(m, -opts.box, opts.box);
    const Eigen::VectorXd ax = a * x;
    const double formal_res = std::abs(g0(ax) - g0(x) - f_poly(x));
    rep.formal_residual = std::max(rep.formal_residual, formal_res);
    const double r = problem.flat_term
                         ? std::abs(g(ax) - g(x) - problem.f(x))
                         : formal_res;
    rep.residual = std::max(rep.residual, r);
    rep.samples.push_back({x, r});
  }
  if (rep.global) rep.global->residual = rep.residual;
  return out;
}

}  // namespace blidkit
