#pragma once

namespace blidkit {

/// Smooth even cutoff on the real line: 1 on [-a, a], 0 outside (-b, b).
///
/// The transition glues psi(u) = exp(-1/u) (u > 0) as
///
///   tau(s) = psi(b^2 - s^2) / (psi(b^2 - s^2) + psi(s^2 - a^2)),
///
/// evaluated in the equivalent logistic form
/// 1 / (1 + exp(1/(b^2 - s^2) - 1/(s^2 - a^2))) so that narrow transitions
/// do not underflow. tau is C-infinity, even, and non-increasing on [a, b].
class ScalarCutoff {
 public:
  /// Throws InvalidRadii unless 0 < a < b, both finite.
  ScalarCutoff(double inner_radius, double outer_radius);

  double inner_radius() const noexcept { return a_; }
  double outer_radius() const noexcept { return b_; }

  double operator()(double s) const noexcept { return value(s); }
  double value(double s) const noexcept;
  /// Closed-form first derivative.
  double first_derivative(double s) const noexcept;

 private:
  double a_;
  double b_;
};

inline constexpr int kMaxCutoffOrder = 4;

ScalarCutoff make_cutoff(double a, double b);

/// k-th derivative of tau at s, k <= 4. Orders 0 and 1 are closed form;
/// orders 2..4 come from truncated Taylor arithmetic on the logistic form.
/// Throws OrderTooHigh for k > 4.
double cutoff_eval(const ScalarCutoff& tau, double s, int order);

/// Scalar blid h(s) = tau(s) * s: the identity on |s| <= a, zero for
/// |s| >= b, and |h(s)| < b everywhere.
double scalar_blid_eval(const ScalarCutoff& tau, double s) noexcept;

/// h'(s) = tau'(s) s + tau(s).
double scalar_blid_derivative(const ScalarCutoff& tau, double s) noexcept;

}  // namespace blidkit
