#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace blidkit {

/// Seeded generator with a fixed identity: std::mt19937_64, with uniform
/// reals built from the top 53 bits so the stream is identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % std::uint64_t(hi - lo + 1));
  }

  Eigen::VectorXd uniform_vector(int n, double lo, double hi) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Uniform point in the Euclidean ball of the given radius.
  Eigen::VectorXd in_ball(int n, double radius) {
    for (;;) {
      Eigen::VectorXd v = uniform_vector(n, -1.0, 1.0);
      if (v.squaredNorm() <= 1.0) return radius * v;
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace blidkit
