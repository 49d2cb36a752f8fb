#include "mpchem/ebi.hpp"

#include <cmath>
#include <stdexcept>

namespace mpchem {

std::vector<double> ebi_reference_solve(const ProdLossFn& prod_loss,
                                        std::span<const double> y0, double dt,
                                        double t_end, const EbiOptions& options) {
  if (dt <= 0.0) throw std::invalid_argument("EBI step size must be > 0");
  const size_t n = y0.size();
  std::vector<double> y_old(y0.begin(), y0.end());
  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> y_next(n), prod(n), dest(n);

  double t = 0.0;
  while (t < t_end * (1.0 - 1.0e-12)) {
    const double h = std::min(dt, t_end - t);
    // fixed-point iteration started from the previous solution
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      std::fill(prod.begin(), prod.end(), 0.0);
      std::fill(dest.begin(), dest.end(), 0.0);
      prod_loss(y, prod, dest);
      double delta = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double loss = y[i] > 0.0 ? dest[i] / y[i] : 0.0;
        y_next[i] = (y_old[i] + h * prod[i]) / (1.0 + h * loss);
        const double scale = std::max(std::abs(y_next[i]), 1.0e-30);
        delta = std::max(delta, std::abs(y_next[i] - y[i]) / scale);
      }
      y.swap(y_next);
      if (delta < options.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("EBI fixed point did not converge; reduce dt");
    y_old = y;
    t += h;
  }
  return y;
}

}  // namespace mpchem
