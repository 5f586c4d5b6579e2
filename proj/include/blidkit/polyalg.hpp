#pragma once

// Homogeneous polynomial maps R^m -> R^d in the monomial basis.
//
// Monomials of a fixed degree n in m variables are ordered graded
// lexicographically with the first variable most significant and higher
// exponents first:  x1^2, x1 x2, x2^2  for (m, n) = (2, 2). Coefficient
// vectors stack the output coordinates one after another in that order.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace blidkit {

inline constexpr int kMaxPolyDim = 6;
inline constexpr int kMaxPolyDegree = 6;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  int dim() const noexcept { return static_cast<int>(p_.size()); }
  int degree() const noexcept;
  int operator[](int i) const noexcept { return p_[i]; }
  const std::vector<int>& exponents() const noexcept { return p_; }

  double monomial(const Eigen::VectorXd& x) const;
  std::string to_string() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> p_;
};

/// All multi-indices of total degree `degree` in `dim` variables, in the
/// graded-lex order described above.
std::vector<MultiIndex> monomial_basis(int dim, int degree);
/// binom(dim + degree - 1, degree).
int basis_size(int dim, int degree);
double factorial(int n);
/// j (j-1) ... (j-n+1); zero when n > j.
double falling_factorial(int j, int n);

class HomPolyMap {
 public:
  /// Zero polynomial. Throws DimensionMismatch / DegreeTooHigh outside
  /// 1 <= dim <= 6, codim >= 1, 0 <= degree <= 6.
  HomPolyMap(int dim, int codim, int degree);

  /// Coefficients as a (codim x basis_size) matrix in basis order.
  HomPolyMap(int dim, int degree, Eigen::MatrixXd coefficients);

  int dim() const noexcept { return dim_; }
  int codim() const noexcept { return static_cast<int>(c_.rows()); }
  int degree() const noexcept { return degree_; }
  const std::vector<MultiIndex>& basis() const noexcept { return basis_; }
  const Eigen::MatrixXd& coefficients() const noexcept { return c_; }

  /// Position of p in the basis; throws DegreeTooHigh when |p| != degree.
  int index_of(const MultiIndex& p) const;
  double coeff(int coord, const MultiIndex& p) const;
  void set_coeff(int coord, const MultiIndex& p, double value);
  void add_coeff(int coord, const MultiIndex& p, double value);

  /// Stacked coefficient vector of length codim * basis_size.
  Eigen::VectorXd coefficient_vector() const;
  static HomPolyMap from_coefficient_vector(int dim, int codim, int degree,
                                            const Eigen::VectorXd& v);

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
  bool is_zero() const { return (c_.array() == 0.0).all(); }

  HomPolyMap& operator+=(const HomPolyMap& o);
  HomPolyMap& operator*=(double s);
  friend HomPolyMap operator*(double s, HomPolyMap p) { return p *= s; }
  friend HomPolyMap operator-(HomPolyMap a, const HomPolyMap& b) {
    HomPolyMap nb = b;
    nb *= -1.0;
    return a += nb;
  }

 private:
  int dim_;
  int degree_;
  std::vector<MultiIndex> basis_;
  std::map<MultiIndex, int> lookup_;
  Eigen::MatrixXd c_;
};

/// Sum_p c_p x^p per coordinate. Throws DimensionMismatch if len(x) != dim.
Eigen::VectorXd hompoly_eval(const HomPolyMap& p, const Eigen::VectorXd& x);

/// Symmetric j-linear form stored on sorted index tuples i1 <= ... <= ij:
///   g(u1, ..., uj) = sum over all index tuples of T[sort(i)] prod_k u_k[i_k].
class SymMultilinear {
 public:
  SymMultilinear(int dim, int codim, int order);

  int dim() const noexcept { return dim_; }
  int codim() const noexcept { return static_cast<int>(t_.rows()); }
  int order() const noexcept { return order_; }
  const std::vector<std::vector<int>>& tuples() const noexcept {
    return tuples_;
  }
  /// Column k holds the codim entries for tuples()[k].
  Eigen::MatrixXd& coefficients() noexcept { return t_; }
  const Eigen::MatrixXd& coefficients() const noexcept { return t_; }

  Eigen::VectorXd operator()(const std::vector<Eigen::VectorXd>& args) const;

 private:
  int dim_;
  int order_;
  std::vector<std::vector<int>> tuples_;
  std::vector<int> full_to_sorted_;
  Eigen::MatrixXd t_;
};

/// Unique symmetric form with g(x, ..., x) = P(x), each entry obtained from
/// the alternating-sign polarization identity
///   g(u1..uj) = 1/(2^j j!) sum_{e in {+-1}^j} (prod e) P(sum e_k u_k).
/// Requires degree >= 1.
SymMultilinear polarize(const HomPolyMap& p);

/// P^(n)(z)(x)^n = j (j-1)...(j-n+1) g(z,...,z, x,...,x) with j-n copies of
/// z; zero for n > j.
Eigen::VectorXd hompoly_derivative(const HomPolyMap& p,
                                   const Eigen::VectorXd& z,
                                   const Eigen::VectorXd& x, int n);

/// Q(x) = P(A x), by expanding every monomial of A x.
HomPolyMap compose_linear(const HomPolyMap& p, const Eigen::MatrixXd& a);

/// Matrix of P -> P o A on degree-n polynomials with `codim` outputs, of
/// size codim * basis_size(m, n).
Eigen::MatrixXd ln_matrix(const Eigen::MatrixXd& a, int n, int codim);

/// Certified c with |P(x)|_inf <= c |x|_inf^j: the largest l1 norm of a
/// coordinate's coefficients.
double continuity_bound(const HomPolyMap& p);

/// Certified bound on |P^(n)(z)(x)^n|_inf for |z|_inf, |x|_inf <= 1:
/// j!/(j-n)! times continuity_bound(p).
double derivative_bound(const HomPolyMap& p, int n);

}  // namespace blidkit
