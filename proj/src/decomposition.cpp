#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blidkit/cohomo.hpp"
#include "blidkit/errors.hpp"
#include "blidkit/numdiff.hpp"
#include "blidkit/random.hpp"

namespace blidkit {

namespace {

constexpr int kMaxFlatOrder = 3;
constexpr double kFdFraction = 0.02;  // FD step relative to the identity radius

double projector_scale(const HyperbolicSplitting& split) {
  return std::max({1.0, split.projector_plus_norm(),
                   split.projector_minus_norm()});
}

bool is_zero(const Eigen::VectorXd& v) { return (v.array() == 0.0).all(); }

}  // namespace

FlatSplit flat_split(ScalarField f0, const HyperbolicSplitting& split,
                     const Blid<Eigen::VectorXd>& h, int order,
                     const ScalarCutoff& tau) {
  if (order < 0 || order > kMaxFlatOrder) {
    throw OrderTooHigh("flat_split supports J <= 3, got " +
                       std::to_string(order));
  }
  const double fd = kFdFraction * h.identity_radius;
  FlatSplit out;
  out.u_radius =
      (h.identity_radius - 2.0 * order * fd) / projector_scale(split);
  for (int j = 0; j <= order; ++j) out.scales.push_back(std::ldexp(1.0, -j));

  if (split.dim_minus() == 0) {
    out.plus = f0;
    out.minus = [](const Eigen::VectorXd&) { return 0.0; };
    return out;
  }
  if (split.dim_plus() == 0) {
    out.plus = [](const Eigen::VectorXd&) { return 0.0; };
    out.minus = f0;
    return out;
  }

  auto f0h = [f0, h](const Eigen::VectorXd& y) { return f0(h(y)); };
  const Eigen::MatrixXd pi_plus = split.projector_plus();
  const Eigen::MatrixXd pi_minus = split.projector_minus();
  const std::vector<double> scales = out.scales;

  auto taylor = [f0h, pi_plus, pi_minus, scales, tau, fd,
                 order](const Eigen::VectorXd& x) {
    const Eigen::VectorXd xp = pi_plus * x;
    const Eigen::VectorXd xm = pi_minus * x;
    const double r2 = xm.squaredNorm();
    double acc = f0h(xp);
    for (int j = 1; j <= order; ++j) {
      // u_j = eps_j H-(x-/eps_j) = tau(|x-|^2 / eps_j^2) x-
      const double eps = scales[j];
      const double w = tau.value(r2 / (eps * eps));
      if (w == 0.0 || r2 == 0.0) continue;
      const double len = w * std::sqrt(r2);
      const Eigen::VectorXd dir = xm / std::sqrt(r2);
      const double d =
          numdiff::directional_derivative(f0h, xp, dir, j, fd, 3);
      acc += d * std::pow(len, j) / factorial(j);
    }
    return acc;
  };
  // Round f+ to f0 - (f0 - f+) so that f+ + f- reproduces f0 bit for bit
  // whenever the two are within a factor of two of each other.
  out.plus = [f0, taylor](const Eigen::VectorXd& x) {
    const double v = f0(x);
    return v - (v - taylor(x));
  };
  ScalarField plus = out.plus;
  out.minus = [f0, plus](const Eigen::VectorXd& x) { return f0(x) - plus(x); };
  return out;
}

VanishingSplit vanishing_split(ScalarField v, const HyperbolicSplitting& split,
                               const Blid<Eigen::VectorXd>& h_minus,
                               double delta) {
  if (!(h_minus.bound < delta)) {
    throw BoundViolation("blid bound " + std::to_string(h_minus.bound) +
                         " is not below the vanishing radius " +
                         std::to_string(delta));
  }
  VanishingSplit out;
  out.strip = std::min(h_minus.identity_radius, delta - h_minus.bound);
  const Eigen::MatrixXd pi_plus = split.projector_plus();
  const Eigen::MatrixXd pi_minus = split.projector_minus();
  out.plus = [v, h_minus, pi_plus, pi_minus](const Eigen::VectorXd& x) {
    const Eigen::VectorXd xm = pi_minus * x;
    const Eigen::VectorXd hx = h_minus(xm);
    // On the plateau of H- the point is x itself; re-adding the two
    // projections would round.
    if (hx == xm) return v(x);
    return v(Eigen::VectorXd(pi_plus * x + hx));
  };
  ScalarField plus = out.plus;
  out.minus = [v, plus](const Eigen::VectorXd& x) { return v(x) - plus(x); };
  return out;
}

namespace {

void require_flat(const ScalarField& f0, int m, double step) {
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(m);
  auto fail = [](const std::string& what, double value) {
    throw NotFlat("right-hand side is not flat at 0: " + what + " = " +
                  std::to_string(value));
  };
  constexpr double kTol = 1e-8;
  const double v0 = f0(origin);
  if (std::abs(v0) > 1e-12) fail("f0(0)", v0);
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < m; ++i) {
    dirs.push_back(Eigen::VectorXd::Unit(m, i));
    for (int j = i + 1; j < m; ++j) {
      dirs.push_back((Eigen::VectorXd::Unit(m, i) + Eigen::VectorXd::Unit(m, j)) /
                     std::sqrt(2.0));
    }
  }
  for (const Eigen::VectorXd& d : dirs) {
    for (int n = 1; n <= 2; ++n) {
      const double v = numdiff::directional_derivative(f0, origin, d, n, step, 2);
      if (std::abs(v) > kTol) fail("derivative of order " + std::to_string(n), v);
    }
  }
}

using Level = std::function<double(const Eigen::VectorXd&)>;

// Sum of f(H(y_k)) along y_{k+1} = step y_k, k >= first. Stops when the
// orbit has provably left the support of H for good (its adapted norm in
// the growing direction exceeds `exit_level`), or after three consecutive
// terms below `small` once the shrinking component is below `quiet_level`
// and the growing one below 1e-4 quiet_level. Later terms then only see
// the right side near the subspace where it is flat.
double orbit_sum(const ScalarField& f, const Blid<Eigen::VectorXd>& h,
                 const Eigen::MatrixXd& step, const Eigen::VectorXd& x,
                 int first, const Level& growing, double exit_level,
                 const Level& shrinking, double quiet_level, double small,
                 int max_terms) {
  Eigen::VectorXd y = x;
  for (int k = 0; k < first; ++k) y = step * y;
  double sum = 0.0;
  int quiet = 0;
  for (int k = first; k < first + max_terms; ++k) {
    if (growing(y) >= exit_level) return sum;
    const Eigen::VectorXd z = h(y);
    const double term = is_zero(z) ? 0.0 : f(z);
    sum += term;
    const bool settled = std::abs(term) <= small &&
                         shrinking(y) <= quiet_level &&
                         growing(y) <= 1e-4 * quiet_level;
    quiet = settled ? quiet + 1 : 0;
    if (quiet >= 3) return sum;
    y = step * y;
  }
  throw SeriesDiverged("local series did not settle within " +
                       std::to_string(max_terms) + " terms");
}

}  // namespace

LocalSolution solve_flat_local(ScalarField f0, const HyperbolicSplitting& split,
                               const Blid<Eigen::VectorXd>& h,
                               const FlatLocalOptions& opts) {
  const int m = split.dim();
  require_flat(f0, m, 0.05 * h.identity_radius);

  LocalSolution out;
  out.radius = h.identity_radius;
  const Eigen::MatrixXd a = split.matrix();
  const Eigen::MatrixXd a_inv = split.inverse();
  const double small = opts.tol * 1e-3;
  const int max_terms = opts.max_terms;
  const double support = h.bound;

  // Blid defining the flat-split neighborhood U, sized so that U contains
  // the image of h.
  const double scale_u = projector_scale(split);
  const double fd_room = 1.0 - 2.0 * kFdFraction * opts.order;
  const double id_u = 1.05 * h.bound * scale_u / fd_room;
  const Blid<Eigen::VectorXd> h_u =
      radial_blid(opts.tau, id_u / std::sqrt(opts.tau.inner_radius()));
  const FlatSplit parts = flat_split(f0, split, h_u, opts.order, opts.tau);
  out.u_radius = parts.u_radius;

  const double exit_minus =
      support * split.norm_constant_minus() * split.projector_minus_norm();
  const double exit_plus =
      support * split.norm_constant_plus() * split.projector_plus_norm();
  const double quiet_level = 0.5 * h.identity_radius;
  const bool has_plus = split.dim_plus() > 0;
  const bool has_minus = split.dim_minus() > 0;
  const HyperbolicSplitting sp = split;
  out.w = [parts, h, a, a_inv, has_plus, has_minus, exit_minus, exit_plus,
           quiet_level, small, max_terms, sp](const Eigen::VectorXd& x) {
    auto grow_minus = [&sp](const Eigen::VectorXd& y) {
      return sp.norm_minus(y);
    };
    auto grow_plus = [&sp](const Eigen::VectorXd& y) {
      return sp.norm_plus(y);
    };
    const double inf = std::numeric_limits<double>::infinity();
    double w = 0.0;
    if (has_plus) {
      w -= orbit_sum(parts.plus, h, a, x, 0, grow_minus,
                     has_minus ? exit_minus : inf, grow_plus, quiet_level,
                     small, max_terms);
    }
    if (has_minus) {
      w += orbit_sum(parts.minus, h, a_inv, x, 1, grow_plus,
                     has_plus ? exit_plus : inf, grow_minus, quiet_level,
                     small, max_terms);
    }
    return w;
  };
  return out;
}

namespace {

struct StripSums {
  VanishingSplit parts;
  HyperbolicSplitting split;
  int max_terms = 0;

  // h+(x) + h-(x); `terms` receives the number of summands visited.
  double eval(const Eigen::VectorXd& x, int* terms) const {
    const double eps = parts.strip;
    const double q = split.q();
    int count = 0;
    double acc = 0.0;
    if (split.dim_plus() > 0) {
      double level = split.norm_plus(x);
      Eigen::VectorXd y = x;
      for (int k = 0; level >= eps; ++k, level *= q) {
        if (k >= max_terms) throw SeriesDiverged("h+ series too long");
        if ((split.projector_plus() * y).norm() >= eps) acc -= parts.plus(y);
        y = split.matrix() * y;
        ++count;
      }
    }
    if (split.dim_minus() > 0) {
      double level = split.norm_minus(x) * q;
      Eigen::VectorXd y = split.inverse() * x;
      for (int k = 1; level >= eps; ++k, level *= q) {
        if (k >= max_terms) throw SeriesDiverged("h- series too long");
        if ((split.projector_minus() * y).norm() >= eps) acc += parts.minus(y);
        y = split.inverse() * y;
        ++count;
      }
    }
    if (terms) *terms = count;
    return acc;
  }
};

// First k with q^k level < eps.
int entry_index(double level, double q, double eps) {
  int k = 0;
  while (level >= eps) {
    level *= q;
    ++k;
  }
  return k;
}

}  // namespace

GlobalSolution globalize(ScalarField gamma0, double delta,
                         const CohomologicalProblem& problem,
                         const HyperbolicSplitting& split,
                         const Blid<Eigen::VectorXd>& h_minus,
                         const GlobalizeOptions& opts) {
  const int m = split.dim();
  if (problem.dim() != m) {
    throw DimensionMismatch("problem and splitting dimensions differ");
  }
  const Eigen::MatrixXd a = split.matrix();
  auto f = [&problem](const Eigen::VectorXd& x) { return problem.f(x); };

  GlobalSolution out;
  GlobalizeReport& rep = out.report;
  Rng rng(opts.seed);
  for (int i = 0; i < opts.local_samples; ++i) {
    const Eigen::VectorXd x = rng.in_ball(m, delta);
    const double r = std::abs(gamma0(a * x) - gamma0(x) - f(x));
    rep.local_residual = std::max(rep.local_residual, r);
  }
  if (rep.local_residual > opts.local_tol) {
    throw LocalResidualTooLarge("local solution misses the equation by " +
                                std::to_string(rep.local_residual) +
                                " on the ball of radius " +
                                std::to_string(delta));
  }

  auto v = [gamma0, a, problem](const Eigen::VectorXd& x) {
    return problem.f(x) - gamma0(a * x) + gamma0(x);
  };
  StripSums sums{vanishing_split(v, split, h_minus, delta), split,
                 opts.max_terms};
  rep.strip = sums.parts.strip;

  // A^k D stays in the strip once q^k max_D N(x) < eps; N is convex so the
  // maximum over the box sits at a vertex.
  double top_plus = 0.0, top_minus = 0.0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    Eigen::VectorXd vertex(m);
    for (int i = 0; i < m; ++i) vertex[i] = (mask >> i & 1) ? opts.box : -opts.box;
    top_plus = std::max(top_plus, split.norm_plus(vertex));
    top_minus = std::max(top_minus, split.norm_minus(vertex));
  }
  rep.k0_plus = entry_index(top_plus, split.q(), rep.strip);
  rep.k0_minus = entry_index(top_minus, split.q(), rep.strip);
  rep.k0 = std::max(rep.k0_plus, rep.k0_minus);
  const double diam = 2.0 * opts.box * std::sqrt(double(m));
  rep.k0_bound = static_cast<int>(
                     std::ceil(std::log(diam / rep.strip) /
                               std::abs(std::log(split.q())))) +
                 1;

  out.g = [gamma0, sums](const Eigen::VectorXd& x) {
    return gamma0(x) + sums.eval(x, nullptr);
  };

  for (int i = 0; i < opts.samples; ++i) {
    const Eigen::VectorXd x = rng.uniform_vector(m, -opts.box, opts.box);
    int t1 = 0, t2 = 0;
    const Eigen::VectorXd ax = a * x;
    const double gx = gamma0(x) + sums.eval(x, &t1);
    const double gax = gamma0(ax) + sums.eval(ax, &t2);
    rep.max_terms_used = std::max({rep.max_terms_used, t1, t2});
    rep.residual = std::max(rep.residual, std::abs(gax - gx - f(x)));
  }
  return out;
}

}  // namespace blidkit
