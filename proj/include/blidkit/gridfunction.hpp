#pragma once

// Discretized C[0,1]: uniform samples with the sup-norm, the pointwise blid
// H(x)(t) = h(x(t)) x(t), the segment blid, and the integral functional
// f(x) = int_0^1 dt / (1 - x(t)) together with its blid extension.

#include <functional>
#include <iosfwd>
#include <vector>

#include "blidkit/bump.hpp"

namespace blidkit {

/// Samples v_0..v_G of a continuous function at t_i = i / G.
class GridFunction {
 public:
  /// G + 1 samples, all zero. Throws DimensionMismatch for G < 2.
  explicit GridFunction(int grid_size);
  /// Throws DimensionMismatch unless values.size() >= 3 and all are finite.
  explicit GridFunction(std::vector<double> values);

  static GridFunction sample(int grid_size,
                             const std::function<double(double)>& f);
  static GridFunction constant(int grid_size, double c);

  int grid_size() const noexcept { return static_cast<int>(v_.size()) - 1; }
  double t(int i) const noexcept { return double(i) / grid_size(); }
  const std::vector<double>& values() const noexcept { return v_; }
  double operator[](int i) const noexcept { return v_[i]; }
  double& operator[](int i) noexcept { return v_[i]; }
  std::size_t size() const noexcept { return v_.size(); }

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double c);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) {
    return a += b;
  }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) {
    return a -= b;
  }
  friend GridFunction operator*(double c, GridFunction a) { return a *= c; }
  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<double> v_;
};

void require_same_grid(const GridFunction& x, const GridFunction& y);

double sup_norm(const GridFunction& x) noexcept;
inline double norm(const GridFunction& x) noexcept { return sup_norm(x); }

/// H(x)(t_i) = h(v_i) with h(s) = tau(s) s. sup_norm(H(x)) < b, and
/// H(x) == x whenever sup_norm(x) <= a.
GridFunction blid_c01(const ScalarCutoff& h, const GridFunction& x);

/// Band [min(phi,psi) - r, max(phi,psi) + r] around the segment between two
/// grid functions. The two-variable cutoff is h(t, s) = tau(dist(t, s)),
/// dist being the distance from s to the band at t, so h = 1 on a
/// neighborhood of the segment and 0 once dist >= b(tau).
class SegmentSpec {
 public:
  SegmentSpec(GridFunction lower, GridFunction upper, double margin,
              ScalarCutoff tau);

  const GridFunction& lower() const noexcept { return phi_; }
  const GridFunction& upper() const noexcept { return psi_; }
  double margin() const noexcept { return margin_; }
  const ScalarCutoff& cutoff() const noexcept { return tau_; }

  double band_distance(int i, double s) const noexcept;
  double weight(int i, double s) const noexcept;

 private:
  GridFunction phi_;
  GridFunction psi_;
  double margin_;
  ScalarCutoff tau_;
};

/// H_y(x)(t) = y(t) + h(t, x(t)) (x(t) - y(t)). Throws GridMismatch.
GridFunction blid_at_segment(const SegmentSpec& spec, const GridFunction& y,
                             const GridFunction& x);

/// Composite trapezoid rule for int_0^1 dt / (1 - x(t)), or with h(x(t)) in
/// place of x(t) when `extended`. Throws PoleOnGrid when an integrand
/// denominator drops below 1e-12.
double integral_functional(const GridFunction& x, bool extended,
                           const ScalarCutoff& h);

/// Composite trapezoid rule on the sample grid.
double trapezoid(const GridFunction& x) noexcept;

/// One "t,v" line per sample, with a header.
void write_csv(std::ostream& out, const GridFunction& x);

}  // namespace blidkit
