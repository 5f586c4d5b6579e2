#include "blidkit/gridfunction.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "blidkit/errors.hpp"

namespace blidkit {

GridFunction::GridFunction(int grid_size) {
  if (grid_size < 2) {
    throw DimensionMismatch("grid_size must be >= 2, got " +
                            std::to_string(grid_size));
  }
  v_.assign(grid_size + 1, 0.0);
}

GridFunction::GridFunction(std::vector<double> values) : v_(std::move(values)) {
  if (v_.size() < 3) {
    throw DimensionMismatch("a grid function needs at least 3 samples");
  }
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (!std::isfinite(v_[i])) {
      throw DimensionMismatch("non-finite sample at index " +
                              std::to_string(i));
    }
  }
}

GridFunction GridFunction::sample(int grid_size,
                                  const std::function<double(double)>& f) {
  GridFunction x(grid_size);
  for (int i = 0; i <= grid_size; ++i) x.v_[i] = f(x.t(i));
  return x;
}

GridFunction GridFunction::constant(int grid_size, double c) {
  GridFunction x(grid_size);
  std::fill(x.v_.begin(), x.v_.end(), c);
  return x;
}

void require_same_grid(const GridFunction& x, const GridFunction& y) {
  if (x.grid_size() != y.grid_size()) {
    throw GridMismatch("grid sizes differ: " + std::to_string(x.grid_size()) +
                       " vs " + std::to_string(y.grid_size()));
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : v_) v *= c;
  return *this;
}

double sup_norm(const GridFunction& x) noexcept {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::abs(v));
  return m;
}

GridFunction blid_c01(const ScalarCutoff& h, const GridFunction& x) {
  GridFunction out = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[int(i)] = scalar_blid_eval(h, x[int(i)]);
  }
  return out;
}

SegmentSpec::SegmentSpec(GridFunction lower, GridFunction upper, double margin,
                         ScalarCutoff tau)
    : phi_(std::move(lower)),
      psi_(std::move(upper)),
      margin_(margin),
      tau_(tau) {
  require_same_grid(phi_, psi_);
  if (!(margin_ >= 0.0) || !std::isfinite(margin_)) {
    throw InvalidRadii("segment margin must be finite and non-negative");
  }
}

double SegmentSpec::band_distance(int i, double s) const noexcept {
  const double lo = std::min(phi_[i], psi_[i]) - margin_;
  const double hi = std::max(phi_[i], psi_[i]) + margin_;
  return std::max({0.0, lo - s, s - hi});
}

double SegmentSpec::weight(int i, double s) const noexcept {
  return tau_.value(band_distance(i, s));
}

GridFunction blid_at_segment(const SegmentSpec& spec, const GridFunction& y,
                             const GridFunction& x) {
  require_same_grid(spec.lower(), y);
  require_same_grid(y, x);
  GridFunction out = y;
  for (int i = 0; i <= x.grid_size(); ++i) {
    const double w = spec.weight(i, x[i]);
    // Keep the identity exact on the plateau; y + (x - y) rounds.
    out[i] = w == 1.0 ? x[i] : y[i] + w * (x[i] - y[i]);
  }
  return out;
}

double trapezoid(const GridFunction& x) noexcept {
  const int g = x.grid_size();
  double acc = 0.5 * (x[0] + x[g]);
  for (int i = 1; i < g; ++i) acc += x[i];
  return acc / g;
}

double integral_functional(const GridFunction& x, bool extended,
                           const ScalarCutoff& h) {
  GridFunction integrand = x;
  for (int i = 0; i <= x.grid_size(); ++i) {
    const double s = extended ? scalar_blid_eval(h, x[i]) : x[i];
    const double denom = 1.0 - s;
    if (denom <= 1e-12) {
      throw PoleOnGrid("integrand 1/(1 - x(t)) is singular at t=" +
                       std::to_string(x.t(i)) + " (x=" + std::to_string(s) +
                       ")");
    }
    integrand[i] = 1.0 / denom;
  }
  return trapezoid(integrand);
}

void write_csv(std::ostream& out, const GridFunction& x) {
  out << "t,v\n";
  out.precision(17);
  for (int i = 0; i <= x.grid_size(); ++i) out << x.t(i) << ',' << x[i] << '\n';
}

}  // namespace blidkit
