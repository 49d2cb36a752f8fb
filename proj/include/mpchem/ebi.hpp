#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mpchem {

// Production/destruction split of the forcing: f = production - destruction,
// with both arrays non-negative.
using ProdLossFn = std::function<void(std::span<const double> y, std::span<double> production,
                                      std::span<double> destruction)>;

struct EbiOptions {
  int max_iterations = 2000;
  double tolerance = 1.0e-13;  // relative fixed-point stopping criterion
};

// Euler-backward-iterative reference solver: fixed steps of size dt, each
// solved by the production/loss fixed point
//   y+ = (y + dt P(y+)) / (1 + dt L(y+)),  L_i = D_i / y_i.
// The fixed point is the backward-Euler solution; this solver exists as an
// independent cross-check for the implicit integrator.
std::vector<double> ebi_reference_solve(const ProdLossFn& prod_loss,
                                        std::span<const double> y0, double dt,
                                        double t_end, const EbiOptions& options = {});

}  // namespace mpchem
