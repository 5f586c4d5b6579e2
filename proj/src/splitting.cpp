#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include "blidkit/cohomo.hpp"
#include "blidkit/errors.hpp"

namespace blidkit {

namespace {

lapack_logical inside_unit_circle(const double* re, const double* im) {
  return std::hypot(*re, *im) < 1.0;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::EigenSolver<Eigen::MatrixXd>(m, false)
      .eigenvalues()
      .cwiseAbs()
      .maxCoeff();
}

struct AdaptedNorm {
  double rho = 0.0;
  int horizon = 0;
  double constant = 1.0;
};

// rho strictly between the spectral radius r and 1, and K the first power
// with |R^K| <= rho^K. Then max_{k<K} rho^-k |R^k c| contracts by rho.
AdaptedNorm adapt(const Eigen::MatrixXd& r) {
  AdaptedNorm out;
  if (r.rows() == 0) return out;
  const double radius = spectral_radius(r);
  const double target = 0.5 * (radius + 1.0);
  const double n1 = spectral_norm(r);
  if (n1 <= target) {
    out.rho = n1;
    out.horizon = 1;
    out.constant = 1.0;
    return out;
  }
  out.rho = target;
  constexpr int kMaxHorizon = 100000;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(r.rows(), r.cols());
  double scale = 1.0;  // rho^-k
  double worst = 1.0;
  for (int k = 1; k <= kMaxHorizon; ++k) {
    power = power * r;
    scale /= target;
    const double nk = spectral_norm(power);
    if (nk * scale <= 1.0) {
      out.horizon = k;
      out.constant = worst;
      return out;
    }
    worst = std::max(worst, nk * scale);
  }
  throw NotHyperbolic("adapted norm horizon exceeds " +
                      std::to_string(kMaxHorizon) +
                      "; spectrum too close to the unit circle");
}

double adapted_value(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& pi,
                     const Eigen::MatrixXd& r, double rho, int horizon,
                     const Eigen::VectorXd& x) {
  if (basis.cols() == 0) return 0.0;
  Eigen::VectorXd c = basis.transpose() * (pi * x);
  double best = c.norm();
  double scale = 1.0;
  for (int k = 1; k < horizon; ++k) {
    c = r * c;
    scale /= rho;
    best = std::max(best, scale * c.norm());
  }
  return best;
}

}  // namespace

double HyperbolicSplitting::norm_plus(const Eigen::VectorXd& x) const {
  return adapted_value(basis_plus_, pi_plus_, r_plus_, rho_plus_, k_plus_, x);
}

double HyperbolicSplitting::norm_minus(const Eigen::VectorXd& x) const {
  return adapted_value(basis_minus_, pi_minus_, r_minus_inv_, rho_minus_,
                       k_minus_, x);
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("eigenvalues need a square matrix");
  }
  std::vector<std::complex<double>> out;
  if (a.rows() == 0) return out;
  const Eigen::VectorXcd ev =
      Eigen::EigenSolver<Eigen::MatrixXd>(a, false).eigenvalues();
  out.assign(ev.data(), ev.data() + ev.size());
  return out;
}

HyperbolicSplitting split_hyperbolic(const Eigen::MatrixXd& a, double margin) {
  const int m = static_cast<int>(a.rows());
  if (m == 0 || a.cols() != m) {
    throw DimensionMismatch("split_hyperbolic needs a nonempty square matrix");
  }
  if (!a.allFinite()) throw DimensionMismatch("matrix has non-finite entries");
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    if (!(s(m - 1) > 1e-14 * s(0))) {
      throw Singular("matrix is not invertible (smallest singular value " +
                     std::to_string(s(m - 1)) + ")");
    }
  }

  Eigen::MatrixXd t = a;
  Eigen::MatrixXd q(m, m);
  Eigen::VectorXd wr(m), wi(m);
  lapack_int sdim = 0;
  const lapack_int info =
      LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'S', inside_unit_circle, m,
                    t.data(), m, &sdim, wr.data(), wi.data(), q.data(), m);
  if (info != 0) {
    throw NotHyperbolic("real Schur factorization failed (info " +
                        std::to_string(info) + ")");
  }

  HyperbolicSplitting s;
  s.a_ = a;
  s.a_inv_ = a.inverse();
  for (int i = 0; i < m; ++i) {
    const std::complex<double> lambda(wr[i], wi[i]);
    const double mod = std::abs(lambda);
    if (mod >= 1.0 - margin && mod <= 1.0 + margin) {
      throw NotHyperbolic("eigenvalue with modulus " + std::to_string(mod) +
                          " lies within the margin of the unit circle");
    }
    s.eigenvalues_.push_back(lambda);
  }

  const int p = sdim;
  const int r = m - p;
  const Eigen::MatrixXd t11 = t.topLeftCorner(p, p);
  const Eigen::MatrixXd t12 = t.topRightCorner(p, r);
  const Eigen::MatrixXd t22 = t.bottomRightCorner(r, r);

  // T11 Y - Y T22 = -T12, vectorized column-major.
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(p, r);
  if (p > 0 && r > 0) {
    const Eigen::MatrixXd ip = Eigen::MatrixXd::Identity(p, p);
    const Eigen::MatrixXd ir = Eigen::MatrixXd::Identity(r, r);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(p * r, p * r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        k.block(i * p, j * p, p, p) = ir(i, j) * t11 - t22(j, i) * ip;
      }
    }
    const Eigen::VectorXd rhs =
        -Eigen::Map<const Eigen::VectorXd>(t12.data(), p * r);
    const Eigen::VectorXd sol = k.fullPivLu().solve(rhs);
    y = Eigen::Map<const Eigen::MatrixXd>(sol.data(), p, r);
  }

  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m, m);
  block.topLeftCorner(p, p).setIdentity();
  block.topRightCorner(p, r) = -y;
  s.pi_plus_ = q * block * q.transpose();
  s.pi_minus_ = Eigen::MatrixXd::Identity(m, m) - s.pi_plus_;

  s.basis_plus_ = q.leftCols(p);
  if (r > 0) {
    Eigen::MatrixXd span(m, r);
    Eigen::MatrixXd stacked(m, r);
    stacked.topRows(p) = y;
    stacked.bottomRows(r).setIdentity();
    span = q * stacked;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
    s.basis_minus_ = qr.householderQ() * Eigen::MatrixXd::Identity(m, r);
  } else {
    s.basis_minus_ = Eigen::MatrixXd(m, 0);
  }

  s.r_plus_ = s.basis_plus_.transpose() * a * s.basis_plus_;
  s.r_minus_inv_ = s.basis_minus_.transpose() * s.a_inv_ * s.basis_minus_;
  const AdaptedNorm np = adapt(s.r_plus_);
  const AdaptedNorm nm = adapt(s.r_minus_inv_);
  s.rho_plus_ = np.rho;
  s.k_plus_ = np.horizon;
  s.c_plus_ = np.constant;
  s.rho_minus_ = nm.rho;
  s.k_minus_ = nm.horizon;
  s.c_minus_ = nm.constant;
  s.q_ = std::max(np.rho, nm.rho);
  s.pi_plus_norm_ = spectral_norm(s.pi_plus_);
  s.pi_minus_norm_ = spectral_norm(s.pi_minus_);
  return s;
}

}  // namespace blidkit
