#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mpchem {

struct SolverOptions {
  double rel_tol = 1.0e-4;
  std::vector<double> abs_tol;      // per component; empty = abs_tol_scalar
  double abs_tol_scalar = 1.0e-14;
  long max_steps = 200000;
  int max_order = 5;                // clamped to [1, 5]
  int newton_max_iters = 8;
  enum class NonNegPolicy { None, Clamp, Reject };
  NonNegPolicy nonneg = NonNegPolicy::Clamp;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 0.0;
  // Components counted in the error-norm divisor (0 = all). Components that
  // never move contribute nothing to the sums either way; this keeps the norm
  // of a mechanism independent of inert padding in the state.
  int norm_count = 0;
};

struct SolveStats {
  long steps = 0;
  long steps_at_order[6] = {0, 0, 0, 0, 0, 0};  // indexed by order, 1..5
  long rhs_evaluations = 0;
  long jacobian_evaluations = 0;
  long lu_factorizations = 0;
  long newton_iterations = 0;
  long newton_failures = 0;
  long error_test_failures = 0;
  int last_order = 0;
  double last_step = 0.0;
  bool success = false;
  std::string error;
};

// Right-hand side f(t, y) and the analytical Jacobian filled into a frozen
// CSC pattern.
struct OdeSystem {
  int n = 0;
  std::function<void(double t, std::span<const double> y, std::span<double> f)> rhs;
  std::function<void(double t, std::span<const double> y, std::span<double> jac_values)>
      jacobian;
  std::vector<int> jac_col_ptr;  // CSC pattern of df/dy
  std::vector<int> jac_row_idx;
  std::vector<int> lu_order;     // optional elimination order for the Newton matrix
};

struct IntegrateResult {
  std::vector<double> y;
  SolveStats stats;
};

// Variable-order (1..5), variable-step BDF with Newton iteration and a sparse
// LU Newton matrix M = I - h/a0 J. Quasi-constant steps: the solution history
// is kept at equal spacing and re-interpolated when the step size changes.
// Local error is controlled against rel_tol |y| + abs_tol in a weighted RMS
// norm. On failure the last accepted state is returned with stats.
IntegrateResult integrate(const OdeSystem& system, std::span<const double> y0, double t0,
                          double t1, const SolverOptions& options);

}  // namespace mpchem
