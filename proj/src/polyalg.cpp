#include "blidkit/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "blidkit/errors.hpp"

namespace blidkit {
namespace {

void check_shape(int dim, int degree) {
  if (dim < 1 || dim > kMaxPolyDim) {
    throw DimensionMismatch("polynomial dimension must be in [1, 6], got " +
                            std::to_string(dim));
  }
  if (degree < 0 || degree > kMaxPolyDegree) {
    throw DegreeTooHigh("polynomial degree must be in [0, 6], got " +
                        std::to_string(degree));
  }
}

void require_len(const Eigen::VectorXd& x, int dim) {
  if (x.size() != dim) {
    throw DimensionMismatch("expected a vector of length " +
                            std::to_string(dim) + ", got " +
                            std::to_string(x.size()));
  }
}

void fill_basis(int var, int remaining, std::vector<int>& cur,
                std::vector<MultiIndex>& out) {
  const int dim = static_cast<int>(cur.size());
  if (var == dim - 1) {
    cur[var] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = e;
    fill_basis(var + 1, remaining - e, cur, out);
  }
}

// Sparse polynomial used while expanding products of linear forms.
using Sparse = std::map<std::vector<int>, double>;

Sparse multiply_linear(const Sparse& poly, const Eigen::RowVectorXd& row) {
  Sparse out;
  for (const auto& [e, c] : poly) {
    for (int k = 0; k < row.size(); ++k) {
      if (row[k] == 0.0) continue;
      std::vector<int> f = e;
      ++f[k];
      out[f] += c * row[k];
    }
  }
  return out;
}

Sparse expand_monomial(const MultiIndex& p, const Eigen::MatrixXd& a) {
  const int m = p.dim();
  Sparse poly{{std::vector<int>(m, 0), 1.0}};
  for (int i = 0; i < m; ++i) {
    for (int r = 0; r < p[i]; ++r) poly = multiply_linear(poly, a.row(i));
  }
  return poly;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : p_(std::move(exponents)) {
  for (int e : p_) {
    if (e < 0) throw DegreeTooHigh("negative exponent in multi-index");
  }
}

int MultiIndex::degree() const noexcept {
  return std::accumulate(p_.begin(), p_.end(), 0);
}

double MultiIndex::monomial(const Eigen::VectorXd& x) const {
  double r = 1.0;
  for (int i = 0; i < dim(); ++i) {
    for (int k = 0; k < p_[i]; ++k) r *= x[i];
  }
  return r;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim(); ++i) os << (i ? "," : "") << p_[i];
  os << ')';
  return os.str();
}

std::vector<MultiIndex> monomial_basis(int dim, int degree) {
  std::vector<MultiIndex> out;
  if (dim < 1 || degree < 0) return out;
  std::vector<int> cur(dim, 0);
  fill_basis(0, degree, cur, out);
  return out;
}

int basis_size(int dim, int degree) {
  double r = 1.0;
  for (int i = 1; i <= degree; ++i) r = r * (dim - 1 + i) / i;
  return static_cast<int>(std::lround(r));
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double falling_factorial(int j, int n) {
  if (n > j) return 0.0;
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= (j - i);
  return r;
}

HomPolyMap::HomPolyMap(int dim, int codim, int degree)
    : dim_(dim), degree_(degree) {
  check_shape(dim, degree);
  if (codim < 1) throw DimensionMismatch("codim must be >= 1");
  basis_ = monomial_basis(dim, degree);
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    lookup_.emplace(basis_[i], i);
  }
  c_ = Eigen::MatrixXd::Zero(codim, static_cast<Eigen::Index>(basis_.size()));
}

HomPolyMap::HomPolyMap(int dim, int degree, Eigen::MatrixXd coefficients)
    : HomPolyMap(dim, std::max<int>(1, int(coefficients.rows())), degree) {
  if (coefficients.cols() != static_cast<Eigen::Index>(basis_.size()) ||
      coefficients.rows() < 1) {
    throw DimensionMismatch("coefficient matrix does not match the basis");
  }
  c_ = std::move(coefficients);
}

int HomPolyMap::index_of(const MultiIndex& p) const {
  auto it = lookup_.find(p);
  if (it == lookup_.end()) {
    throw DegreeTooHigh("multi-index " + p.to_string() +
                        " is not a degree-" + std::to_string(degree_) +
                        " monomial in " + std::to_string(dim_) + " variables");
  }
  return it->second;
}

double HomPolyMap::coeff(int coord, const MultiIndex& p) const {
  return c_(coord, index_of(p));
}

void HomPolyMap::set_coeff(int coord, const MultiIndex& p, double value) {
  c_(coord, index_of(p)) = value;
}

void HomPolyMap::add_coeff(int coord, const MultiIndex& p, double value) {
  c_(coord, index_of(p)) += value;
}

Eigen::VectorXd HomPolyMap::coefficient_vector() const {
  Eigen::VectorXd v(c_.size());
  const Eigen::Index b = c_.cols();
  for (Eigen::Index r = 0; r < c_.rows(); ++r) v.segment(r * b, b) = c_.row(r);
  return v;
}

HomPolyMap HomPolyMap::from_coefficient_vector(int dim, int codim, int degree,
                                               const Eigen::VectorXd& v) {
  HomPolyMap p(dim, codim, degree);
  const Eigen::Index b = p.c_.cols();
  if (v.size() != b * codim) {
    throw DimensionMismatch("coefficient vector has the wrong length");
  }
  for (Eigen::Index r = 0; r < codim; ++r) p.c_.row(r) = v.segment(r * b, b);
  return p;
}

Eigen::VectorXd HomPolyMap::operator()(const Eigen::VectorXd& x) const {
  require_len(x, dim_);
  Eigen::VectorXd mono(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) mono[k] = basis_[k].monomial(x);
  return c_ * mono;
}

HomPolyMap& HomPolyMap::operator+=(const HomPolyMap& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_ || o.codim() != codim()) {
    throw DimensionMismatch("cannot add polynomials of different shapes");
  }
  c_ += o.c_;
  return *this;
}

HomPolyMap& HomPolyMap::operator*=(double s) {
  c_ *= s;
  return *this;
}

Eigen::VectorXd hompoly_eval(const HomPolyMap& p, const Eigen::VectorXd& x) {
  return p(x);
}

SymMultilinear::SymMultilinear(int dim, int codim, int order)
    : dim_(dim), order_(order) {
  check_shape(dim, order);
  std::map<std::vector<int>, int> index;
  // Sorted tuples are in bijection with the degree-`order` basis.
  for (const MultiIndex& p : monomial_basis(dim, order)) {
    std::vector<int> tup;
    for (int i = 0; i < dim; ++i) tup.insert(tup.end(), p[i], i);
    index.emplace(tup, static_cast<int>(tuples_.size()));
    tuples_.push_back(std::move(tup));
  }
  int total = 1;
  for (int k = 0; k < order; ++k) total *= dim;
  full_to_sorted_.resize(total);
  std::vector<int> tup(order, 0);
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    for (int k = order - 1; k >= 0; --k) {
      tup[k] = rem % dim;
      rem /= dim;
    }
    std::vector<int> sorted = tup;
    std::sort(sorted.begin(), sorted.end());
    full_to_sorted_[flat] = index.at(sorted);
  }
  t_ = Eigen::MatrixXd::Zero(codim, static_cast<Eigen::Index>(tuples_.size()));
}

Eigen::VectorXd SymMultilinear::operator()(
    const std::vector<Eigen::VectorXd>& args) const {
  if (static_cast<int>(args.size()) != order_) {
    throw DimensionMismatch("multilinear form expects " +
                            std::to_string(order_) + " arguments");
  }
  for (const auto& u : args) require_len(u, dim_);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(codim());
  if (order_ == 0) return t_.col(0);
  const int total = static_cast<int>(full_to_sorted_.size());
  std::vector<int> tup(order_, 0);
  for (int flat = 0; flat < total; ++flat) {
    double w = 1.0;
    for (int k = 0; k < order_ && w != 0.0; ++k) w *= args[k][tup[k]];
    if (w != 0.0) out += w * t_.col(full_to_sorted_[flat]);
    for (int k = order_ - 1; k >= 0; --k) {
      if (++tup[k] < dim_) break;
      tup[k] = 0;
    }
  }
  return out;
}

SymMultilinear polarize(const HomPolyMap& p) {
  const int j = p.degree();
  if (j < 1) throw DegreeTooHigh("polarization needs degree >= 1");
  SymMultilinear g(p.dim(), p.codim(), j);
  const double norm = 1.0 / (std::ldexp(1.0, j) * factorial(j));
  const int patterns = 1 << j;
  for (std::size_t k = 0; k < g.tuples().size(); ++k) {
    const auto& tup = g.tuples()[k];
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(p.codim());
    for (int mask = 0; mask < patterns; ++mask) {
      Eigen::VectorXd y = Eigen::VectorXd::Zero(p.dim());
      double sign = 1.0;
      for (int i = 0; i < j; ++i) {
        const double e = (mask >> i & 1) ? -1.0 : 1.0;
        sign *= e;
        y[tup[i]] += e;
      }
      acc += sign * p(y);
    }
    g.coefficients().col(static_cast<Eigen::Index>(k)) = norm * acc;
  }
  return g;
}

Eigen::VectorXd hompoly_derivative(const HomPolyMap& p,
                                   const Eigen::VectorXd& z,
                                   const Eigen::VectorXd& x, int n) {
  require_len(z, p.dim());
  require_len(x, p.dim());
  if (n < 0) throw DegreeTooHigh("derivative order must be non-negative");
  const int j = p.degree();
  if (n > j) return Eigen::VectorXd::Zero(p.codim());
  if (j == 0) return p(x);
  std::vector<Eigen::VectorXd> args;
  args.reserve(j);
  for (int k = 0; k < j - n; ++k) args.push_back(z);
  for (int k = 0; k < n; ++k) args.push_back(x);
  return falling_factorial(j, n) * polarize(p)(args);
}

HomPolyMap compose_linear(const HomPolyMap& p, const Eigen::MatrixXd& a) {
  if (a.rows() != p.dim() || a.cols() != p.dim()) {
    throw DimensionMismatch("compose_linear needs a square matrix of size " +
                            std::to_string(p.dim()));
  }
  HomPolyMap q(p.dim(), p.codim(), p.degree());
  for (std::size_t b = 0; b < p.basis().size(); ++b) {
    const Eigen::VectorXd col = p.coefficients().col(Eigen::Index(b));
    if ((col.array() == 0.0).all()) continue;
    for (const auto& [e, c] : expand_monomial(p.basis()[b], a)) {
      const MultiIndex target(e);
      for (int r = 0; r < p.codim(); ++r) {
        if (col[r] != 0.0) q.add_coeff(r, target, col[r] * c);
      }
    }
  }
  return q;
}

Eigen::MatrixXd ln_matrix(const Eigen::MatrixXd& a, int n, int codim) {
  if (a.rows() != a.cols()) throw DimensionMismatch("A must be square");
  const int m = static_cast<int>(a.rows());
  HomPolyMap unit(m, 1, n);
  const int b = static_cast<int>(unit.basis().size());
  Eigen::MatrixXd block(b, b);
  for (int k = 0; k < b; ++k) {
    HomPolyMap mono(m, 1, n);
    mono.set_coeff(0, mono.basis()[k], 1.0);
    block.col(k) = compose_linear(mono, a).coefficients().row(0).transpose();
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(b * codim, b * codim);
  for (int r = 0; r < codim; ++r) out.block(r * b, r * b, b, b) = block;
  return out;
}

double continuity_bound(const HomPolyMap& p) {
  if (p.coefficients().size() == 0) return 0.0;
  return p.coefficients().cwiseAbs().rowwise().sum().maxCoeff();
}

double derivative_bound(const HomPolyMap& p, int n) {
  return falling_factorial(p.degree(), n) * continuity_bound(p);
}

}  // namespace blidkit
