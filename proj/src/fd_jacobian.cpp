#include "mpchem/fd_jacobian.hpp"

#include <cmath>
#include <limits>

namespace mpchem {

std::vector<double> finite_difference_jacobian(const RhsFn& rhs, double t,
                                               std::span<const double> y, double floor) {
  const size_t n = y.size();
  const double sqrt_ulp = std::sqrt(std::numeric_limits<double>::epsilon());
  std::vector<double> jac(n * n, 0.0);
  std::vector<double> yp(y.begin(), y.end());
  std::vector<double> f_plus(n), f_minus(n);

  for (size_t j = 0; j < n; ++j) {
    const double eps = std::max(sqrt_ulp * std::abs(y[j]), floor);
    yp[j] = y[j] + eps;
    rhs(t, yp, f_plus);
    yp[j] = y[j] - eps;
    rhs(t, yp, f_minus);
    yp[j] = y[j];
    const double inv = 1.0 / (2.0 * eps);
    for (size_t i = 0; i < n; ++i) jac[i * n + j] = (f_plus[i] - f_minus[i]) * inv;
  }
  return jac;
}

}  // namespace mpchem
