#include <cmath>

#include "blidkit/cohomo.hpp"
#include "blidkit/errors.hpp"

namespace blidkit {

std::vector<Resonance> check_resonances(
    const std::vector<std::complex<double>>& eigenvalues, int n_max,
    double tol) {
  if (n_max < 1) throw DegreeTooHigh("n_max must be >= 1");
  std::vector<Resonance> out;
  const int m = static_cast<int>(eigenvalues.size());
  if (m == 0) return out;
  for (int n = 1; n <= n_max; ++n) {
    for (const MultiIndex& p : monomial_basis(m, n)) {
      std::complex<double> prod(1.0, 0.0);
      for (int i = 0; i < m; ++i) {
        for (int e = 0; e < p[i]; ++e) prod *= eigenvalues[i];
      }
      const double residual = std::abs(prod - 1.0);
      if (residual <= tol) out.push_back({p, residual});
    }
  }
  return out;
}

}  // namespace blidkit
