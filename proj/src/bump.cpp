#include "blidkit/bump.hpp"

#include <array>
#include <cmath>
#include <string>

#include "blidkit/errors.hpp"

namespace blidkit {

ScalarCutoff::ScalarCutoff(double inner_radius, double outer_radius)
    : a_(inner_radius), b_(outer_radius) {
  if (!std::isfinite(a_) || !std::isfinite(b_) || a_ <= 0.0 || b_ <= a_) {
    throw InvalidRadii("cutoff radii must satisfy 0 < a < b, got a=" +
                       std::to_string(a_) + " b=" + std::to_string(b_));
  }
}

double ScalarCutoff::value(double s) const noexcept {
  const double s2 = s * s;
  if (s2 <= a_ * a_) return 1.0;
  if (s2 >= b_ * b_) return 0.0;
  const double u = b_ * b_ - s2;
  const double v = s2 - a_ * a_;
  // exp overflow to +inf gives exactly 0, which is the right limit.
  return 1.0 / (1.0 + std::exp(1.0 / u - 1.0 / v));
}

double ScalarCutoff::first_derivative(double s) const noexcept {
  const double s2 = s * s;
  if (s2 <= a_ * a_ || s2 >= b_ * b_) return 0.0;
  const double u = b_ * b_ - s2;
  const double v = s2 - a_ * a_;
  // tau = sigma(w), w = 1/v - 1/u, dw/ds = -2s (1/u^2 + 1/v^2).
  const double w = 1.0 / v - 1.0 / u;
  const double sig = 1.0 / (1.0 + std::exp(-w));
  const double sig_c = 1.0 / (1.0 + std::exp(w));
  const double damp = sig * sig_c;
  if (damp == 0.0) return 0.0;
  return -2.0 * s * damp * (1.0 / (u * u) + 1.0 / (v * v));
}

ScalarCutoff make_cutoff(double a, double b) { return ScalarCutoff(a, b); }

namespace {

using Series = std::array<double, kMaxCutoffOrder + 1>;

Series mul(const Series& x, const Series& y) {
  Series r{};
  for (int i = 0; i <= kMaxCutoffOrder; ++i) {
    for (int j = 0; i + j <= kMaxCutoffOrder; ++j) r[i + j] += x[i] * y[j];
  }
  return r;
}

// Taylor coefficients of 1 / (c0 + c1 t + t^2) at t = 0.
Series reciprocal_quadratic(double c0, double c1) {
  Series r{};
  r[0] = 1.0 / c0;
  for (int n = 1; n <= kMaxCutoffOrder; ++n) {
    double acc = c1 * r[n - 1];
    if (n >= 2) acc += r[n - 2];
    r[n] = -acc / c0;
  }
  return r;
}

}  // namespace

double cutoff_eval(const ScalarCutoff& tau, double s, int order) {
  if (order < 0 || order > kMaxCutoffOrder) {
    throw OrderTooHigh("cutoff derivatives are available up to order 4, got " +
                       std::to_string(order));
  }
  if (order == 0) return tau.value(s);
  if (order == 1) return tau.first_derivative(s);
  const double a = tau.inner_radius();
  const double b = tau.outer_radius();
  const double s2 = s * s;
  if (s2 <= a * a || s2 >= b * b) return 0.0;

  // tau(s + t) = sigma(w(s + t)) with w = 1/v - 1/u, v = s^2 - a^2 and
  // u = b^2 - s^2. Expand w in t, then compose with the Taylor series of
  // the logistic sigma, whose derivatives are polynomials in sigma.
  const Series inv_v = reciprocal_quadratic(s2 - a * a, 2.0 * s);
  Series inv_u = reciprocal_quadratic(s2 - b * b, 2.0 * s);  // -1/u
  Series delta{};
  for (int i = 1; i <= kMaxCutoffOrder; ++i) delta[i] = inv_v[i] + inv_u[i];
  const double w = inv_v[0] + inv_u[0];
  const double sig = 1.0 / (1.0 + std::exp(-w));
  const double sig_c = 1.0 / (1.0 + std::exp(w));
  const double d1 = sig * sig_c;
  if (d1 == 0.0) return 0.0;
  const double m = sig_c - sig;
  const double d2 = d1 * m;
  const double d3 = d2 * m - 2.0 * d1 * d1;
  const double d4 = d3 * m - 6.0 * d1 * d2;
  const double dk[] = {d1, d2 / 2.0, d3 / 6.0, d4 / 24.0};

  Series out{};
  Series power = delta;
  for (int k = 1; k <= kMaxCutoffOrder; ++k) {
    for (int i = 0; i <= kMaxCutoffOrder; ++i) out[i] += dk[k - 1] * power[i];
    power = mul(power, delta);
  }
  double fact = 1.0;
  for (int i = 2; i <= order; ++i) fact *= i;
  return out[order] * fact;
}

double scalar_blid_eval(const ScalarCutoff& tau, double s) noexcept {
  return tau.value(s) * s;
}

double scalar_blid_derivative(const ScalarCutoff& tau, double s) noexcept {
  return tau.first_derivative(s) * s + tau.value(s);
}

}  // namespace blidkit
