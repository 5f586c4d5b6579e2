#pragma once

// Linear cohomological equation g(A x) - g(x) = f(x) on R^m for scalar g.
//
// The pieces, in the order the full solver uses them:
//   split_hyperbolic   invariant splitting R^m = X+ (+) X- with an adapted norm
//   check_resonances   multi-indices p with lambda^p = 1 up to a tolerance
//   solve_formal       degree-n coefficient equation  Q(A x) - Q(x) = P(x)
//   solve_series       g = -sum_{k>=0} f(A^k x)  or  g = sum_{k>=1} f(A^-k x)
//   flat_split / solve_flat_local   local solution for a flat right side
//   vanishing_split / globalize     extend a local solution to all of R^m

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "blidkit/blid.hpp"
#include "blidkit/bump.hpp"
#include "blidkit/polyalg.hpp"

namespace blidkit {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// R^m = X+ (+) X-, with A contracting on X+ and expanding on X-, plus an
/// adapted norm in which |A y| <= q |y| on X+ and |A^-1 y| <= q |y| on X-.
///
/// The adapted norm on X+ is N+(y) = max_{0<=k<K+} rho+^-k |R+^k c|, where c
/// are the coordinates of y in the orthonormal basis of X+ and R+ the
/// restriction of A in that basis; N- is the same construction for A^-1 on
/// X-. Both dominate the Euclidean norm.
class HyperbolicSplitting {
 public:
  int dim() const noexcept { return static_cast<int>(a_.rows()); }
  int dim_plus() const noexcept { return static_cast<int>(basis_plus_.cols()); }
  int dim_minus() const noexcept {
    return static_cast<int>(basis_minus_.cols());
  }

  const Eigen::MatrixXd& matrix() const noexcept { return a_; }
  const Eigen::MatrixXd& inverse() const noexcept { return a_inv_; }
  const std::vector<std::complex<double>>& eigenvalues() const noexcept {
    return eigenvalues_;
  }
  /// Orthonormal column bases of X+ and X-.
  const Eigen::MatrixXd& basis_plus() const noexcept { return basis_plus_; }
  const Eigen::MatrixXd& basis_minus() const noexcept { return basis_minus_; }
  /// Projector onto X+ along X-, and its complement.
  const Eigen::MatrixXd& projector_plus() const noexcept { return pi_plus_; }
  const Eigen::MatrixXd& projector_minus() const noexcept { return pi_minus_; }

  /// Contraction factor of the adapted norm, max(rho+, rho-), in (0, 1).
  double q() const noexcept { return q_; }
  double rho_plus() const noexcept { return rho_plus_; }
  double rho_minus() const noexcept { return rho_minus_; }
  /// Number of powers in the adapted norm, max(K+, K-).
  int horizon() const noexcept { return std::max(k_plus_, k_minus_); }

  /// N+(pi+ x) and N-(pi- x).
  double norm_plus(const Eigen::VectorXd& x) const;
  double norm_minus(const Eigen::VectorXd& x) const;
  /// Constants with N+(y) <= c+ |y| on X+ (and likewise on X-).
  double norm_constant_plus() const noexcept { return c_plus_; }
  double norm_constant_minus() const noexcept { return c_minus_; }

  /// Spectral norms of the projectors.
  double projector_plus_norm() const noexcept { return pi_plus_norm_; }
  double projector_minus_norm() const noexcept { return pi_minus_norm_; }

 private:
  friend HyperbolicSplitting split_hyperbolic(const Eigen::MatrixXd&, double);
  HyperbolicSplitting() = default;

  Eigen::MatrixXd a_, a_inv_;
  std::vector<std::complex<double>> eigenvalues_;
  Eigen::MatrixXd basis_plus_, basis_minus_;
  Eigen::MatrixXd pi_plus_, pi_minus_;
  Eigen::MatrixXd r_plus_;       // B+^T A B+
  Eigen::MatrixXd r_minus_inv_;  // B-^T A^-1 B-
  double rho_plus_ = 0.0, rho_minus_ = 0.0, q_ = 0.0;
  int k_plus_ = 0, k_minus_ = 0;
  double c_plus_ = 1.0, c_minus_ = 1.0;
  double pi_plus_norm_ = 0.0, pi_minus_norm_ = 0.0;
};

/// Ordered real Schur form puts the eigenvalues inside the unit circle
/// first; the complementary invariant subspace comes from the Sylvester
/// equation that block-diagonalizes the Schur form. Throws Singular if A is
/// not invertible and NotHyperbolic if some |lambda| lies in
/// [1 - margin, 1 + margin].
HyperbolicSplitting split_hyperbolic(const Eigen::MatrixXd& a,
                                     double margin = 1e-6);

/// Eigenvalues of a square real matrix.
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& a);

struct Resonance {
  MultiIndex index;
  double residual = 0.0;  // |lambda^p - 1|
};

/// All p with 1 <= |p| <= n_max and |lambda^p - 1| <= tol, by degree and
/// then in monomial-basis order.
std::vector<Resonance> check_resonances(
    const std::vector<std::complex<double>>& eigenvalues, int n_max,
    double tol);

struct FormalDiagnostics {
  double sigma_min = 0.0;        // smallest singular value of L_n - I
  double system_residual = 0.0;  // |(L_n - I) q - p|_inf
  double roundtrip_residual = 0.0;
};

/// Q with Q(A x) - Q(x) = P(x), P homogeneous of degree n >= 1 with scalar
/// or vector values. Singular values of (L_n - I) at or below
/// tol (1 + |p|_2) are treated as zero; the minimum-norm solution is
/// returned when P has no component along them (resonant coefficients of Q
/// are then zero). Otherwise throws SingularResonance listing the resonant
/// p of degree n, or the nearest ones when none is within 1e-8.
HomPolyMap solve_formal(const Eigen::MatrixXd& a, const HomPolyMap& p,
                        double tol, FormalDiagnostics* diag = nullptr);

enum class SeriesDirection { contraction, expansion };

/// |f(y)| <= constant |y|^exponent for |y| <= radius.
struct LocalGrowth {
  double constant = 0.0;
  double exponent = 1.0;
  double radius = 1.0;
};

/// Growth data for f = sum_n (1/n!) P_n on the ball of the given radius.
LocalGrowth polynomial_growth(const std::vector<HomPolyMap>& terms,
                              double radius);

struct SeriesValue {
  double value = 0.0;
  int terms = 0;            // k*
  double tail_bound = 0.0;  // certified bound on the dropped terms
};

/// Truncated series for the contraction or expansion solution. k* is the
/// first index where the iterate has entered the growth ball and the
/// geometric tail C (q^k N(x))^nu / (1 - q^nu) is <= tol. Throws
/// NotContractive (NotExpansive) when X- (X+) is not trivial, i.e. when A
/// is not a contraction (expansion).
SeriesValue solve_series(const HyperbolicSplitting& split, const ScalarField& f,
                         const LocalGrowth& growth, const Eigen::VectorXd& x,
                         SeriesDirection direction, double tol);

/// Convenience form: splits A, and takes f as a polynomial in Taylor form.
SeriesValue solve_series(const Eigen::MatrixXd& a,
                         const std::vector<HomPolyMap>& terms,
                         const Eigen::VectorXd& x, SeriesDirection direction,
                         double tol);

/// f = sum_n (1/n!) P_n for scalar-valued P_n.
double taylor_sum(const std::vector<HomPolyMap>& terms,
                  const Eigen::VectorXd& x);

struct FlatSplit {
  ScalarField plus;
  ScalarField minus;
  double u_radius = 0.0;       // f0 o H = f0 and the flatness statements hold
  std::vector<double> scales;  // eps_j
};

/// f+ = sum_{j<=J} (1/j!) P_j, P_j(x) the j-th derivative of f0 o H in the
/// X- direction at pi+ x, applied to u_j = eps_j H-(x-/eps_j) with
/// H-(y) = tau(|y|^2) y and eps_j = 2^-j; f- = f0 - f+. Derivatives are
/// Richardson-extrapolated central differences with base step 0.02 times
/// the identity radius of H. J <= 3; OrderTooHigh otherwise.
FlatSplit flat_split(ScalarField f0, const HyperbolicSplitting& split,
                     const Blid<Eigen::VectorXd>& h, int order,
                     const ScalarCutoff& tau);

struct VanishingSplit {
  ScalarField plus;
  ScalarField minus;
  double strip = 0.0;  // v+ = 0 on |x+| < strip, v- = 0 on |x-| < strip
};

/// v+(x) = v(x+ + H-(x-)), v- = v - v+, for v vanishing on |x| < delta.
/// H- is applied to the X- component; the strip width is
/// min(identity radius of H-, delta - bound of H-). Throws BoundViolation
/// when the bound of H- is not below delta.
VanishingSplit vanishing_split(ScalarField v, const HyperbolicSplitting& split,
                               const Blid<Eigen::VectorXd>& h_minus,
                               double delta);

struct FlatLocalOptions {
  int order = 3;  // J of the flat split
  ScalarCutoff tau{0.25, 1.0};
  double tol = 1e-8;
  int max_terms = 2000;
};

struct LocalSolution {
  ScalarField w;
  double radius = 0.0;  // w(Ax) - w(x) = f0(x) for |x| < radius
  double u_radius = 0.0;
};

/// Local solution for a flat f0 on the identity ball of H:
///   w+(x) = -sum_{k>=0} f+(H(A^k x)),  w-(x) = sum_{k>=1} f-(H(A^-k x)).
/// Each series stops once the orbit has provably left the support of H for
/// good, or after three consecutive terms below tol * 1e-3 while the orbit
/// sits close to the contracting subspace near 0. Throws NotFlat
/// when f0 or its first two derivatives at 0 are visibly nonzero, and
/// SeriesDiverged when max_terms is reached.
LocalSolution solve_flat_local(ScalarField f0, const HyperbolicSplitting& split,
                               const Blid<Eigen::VectorXd>& h,
                               const FlatLocalOptions& opts = {});

/// Flat right-hand side exp(-1/|x|^2) (c . x), zero at the origin.
struct FlatTerm {
  std::string kind = "exp_flat";
  Eigen::VectorXd coeff;

  double operator()(const Eigen::VectorXd& x) const;
};

struct CohomologicalProblem {
  Eigen::MatrixXd a;
  std::vector<HomPolyMap> terms;  // P_n = f^(n)(0)(x)^n, scalar-valued
  std::optional<FlatTerm> flat_term;
  int degree_cap = kMaxPolyDegree;
  double tol = 1e-10;

  /// Throws DimensionMismatch / DegreeTooHigh on inconsistent data and
  /// BoundViolation when f(0) != 0.
  void validate() const;
  int dim() const { return static_cast<int>(a.rows()); }
  double f(const Eigen::VectorXd& x) const;
};

struct GlobalizeOptions {
  double box = 5.0;  // D = [-box, box]^m
  int samples = 2000;
  std::uint64_t seed = 1;
  double local_tol = 1e-9;
  int local_samples = 200;
  int max_terms = 10000;
};

struct GlobalizeReport {
  double strip = 0.0;        // epsilon
  int k0_plus = 0;           // A^k D lies in the X+ strip for k >= k0_plus
  int k0_minus = 0;          // A^-k D lies in the X- strip for k >= k0_minus
  int k0 = 0;
  int k0_bound = 0;          // ceil(log(diam D / eps) / |log q|) + 1
  int max_terms_used = 0;
  double local_residual = 0.0;
  double residual = 0.0;     // sup over the sample box
};

struct GlobalSolution {
  ScalarField g;
  GlobalizeReport report;
};

/// g = gamma0 + h+ + h- with v = f - gamma0(A.) + gamma0, split into strip
/// pieces, h+(x) = -sum_{k>=0} v+(A^k x), h-(x) = sum_{k>=1} v-(A^-k x).
/// Throws LocalResidualTooLarge when gamma0 fails the equation by more than
/// local_tol on sampled |x| < delta.
GlobalSolution globalize(ScalarField gamma0, double delta,
                         const CohomologicalProblem& problem,
                         const HyperbolicSplitting& split,
                         const Blid<Eigen::VectorXd>& h_minus,
                         const GlobalizeOptions& opts = {});

struct SolveOptions {
  double margin = 1e-6;
  double resonance_tol = 1e-8;
  double box = 3.0;  // residual samples in [-box, box]^m
  int samples = 10000;
  std::uint64_t seed = 1;
  double local_radius = 0.25;  // identity radius of the local blid
  GlobalizeOptions global;
};

struct DegreeReport {
  int degree = 0;
  FormalDiagnostics formal;
};

struct ResidualSample {
  Eigen::VectorXd x;
  double residual = 0.0;
};

struct SolveReport {
  double q = 0.0;
  int horizon = 0;
  std::vector<std::complex<double>> eigenvalues;
  std::vector<Resonance> resonances;
  std::vector<DegreeReport> degrees;
  double formal_residual = 0.0;  // sup |g0(Ax) - g0(x) - f_poly(x)|
  std::optional<double> local_residual;
  std::optional<GlobalizeReport> global;
  double residual = 0.0;  // sup |g(Ax) - g(x) - f(x)| on the sample box
  std::vector<ResidualSample> samples;
};

struct CohomologicalSolution {
  ScalarField g;
  std::vector<HomPolyMap> formal;  // Q_n per degree
  SolveReport report;
};

/// Formal solution degree by degree, then the flat pipeline when the
/// problem carries a flat term. Throws SingularResonance or NotHyperbolic.
CohomologicalSolution solve_cohomological(const CohomologicalProblem& problem,
                                          const SolveOptions& opts = {});

}  // namespace blidkit
