#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mpchem {

using RhsFn =
    std::function<void(double t, std::span<const double> y, std::span<double> f)>;

// Dense central-difference Jacobian (row-major n x n), used as a test oracle.
// Per-component step: max(sqrt(machine epsilon) * |y_i|, floor).
std::vector<double> finite_difference_jacobian(const RhsFn& rhs, double t,
                                               std::span<const double> y,
                                               double floor = 1.0e-30);

}  // namespace mpchem
