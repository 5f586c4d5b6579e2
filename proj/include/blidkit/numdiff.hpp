#pragma once

// Central finite differences of arbitrary order with Richardson
// extrapolation. The n-th central difference
//
//   D_h f(x) = h^-n * sum_k (-1)^k C(n,k) f(x + (n/2 - k) h)
//
// has an error expansion in even powers of h, so halving the step and
// eliminating h^2, h^4, ... in a Neville tableau converges quickly for
// smooth f. Values may be scalars or Eigen vectors.

#include <cmath>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace blidkit::numdiff {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Plain n-th central difference with step h.
template <class F>
auto central_difference(const F& f, double x, int order, double h) {
  using T = std::decay_t<decltype(f(x))>;
  T acc = f(x + 0.5 * order * h);
  for (int k = 1; k <= order; ++k) {
    const double c = ((k % 2) ? -1.0 : 1.0) * binomial(order, k);
    acc += c * f(x + (0.5 * order - k) * h);
  }
  return T(acc / std::pow(h, order));
}

/// n-th derivative of f at x by central differences with steps
/// h, h/2, ..., h/2^(levels-1) combined by Richardson extrapolation.
/// The stencil never leaves [x - order*h/2, x + order*h/2].
template <class F>
auto richardson_derivative(const F& f, double x, int order, double h,
                           int levels = 3) {
  using T = std::decay_t<decltype(f(x))>;
  if (order == 0) return T(f(x));
  std::vector<std::vector<T>> table(levels);
  double step = h;
  for (int i = 0; i < levels; ++i, step *= 0.5) {
    table[i].push_back(central_difference(f, x, order, step));
    double factor = 4.0;
    for (int k = 1; k <= i; ++k, factor *= 4.0) {
      const T& fine = table[i][k - 1];
      const T& coarse = table[i - 1][k - 1];
      table[i].push_back(T(fine + (fine - coarse) / (factor - 1.0)));
    }
  }
  return table.back().back();
}

/// n-th directional derivative d^n/ds^n F(p + s*dir) at s = 0.
template <class F>
auto directional_derivative(const F& field, const Eigen::VectorXd& point,
                            const Eigen::VectorXd& dir, int order, double h,
                            int levels = 3) {
  auto line = [&](double s) {
    Eigen::VectorXd y = point + s * dir;
    return field(y);
  };
  return richardson_derivative(line, 0.0, order, h, levels);
}

}  // namespace blidkit::numdiff
