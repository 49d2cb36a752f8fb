#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

namespace mpchem {

// Registration stage of the Jacobian lifecycle: collect (row, col) slots,
// then freeze into a compressed-sparse-column matrix.
class JacobianPattern {
 public:
  JacobianPattern(int n_rows = 0, int n_cols = 0) : n_rows_(n_rows), n_cols_(n_cols) {}

  void add(int row, int col) {
    if (row < 0 || row >= n_rows_ || col < 0 || col >= n_cols_)
      throw std::out_of_range("jacobian slot out of range");
    entries_.push_back({row, col});
  }

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  const std::vector<std::pair<int, int>>& entries() const { return entries_; }

 private:
  int n_rows_, n_cols_;
  std::vector<std::pair<int, int>> entries_;
};

// Frozen CSC matrix with a fixed sparsity pattern. Values are accumulated
// into pre-registered slots only; slot() fails loudly for unregistered pairs.
class SparseJacobian {
 public:
  SparseJacobian() = default;
  static SparseJacobian freeze(const JacobianPattern& pattern);

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  int nnz() const { return static_cast<int>(row_idx_.size()); }

  // Index of a registered slot; throws if (row, col) was never registered.
  int slot(int row, int col) const;
  // -1 if absent.
  int find_slot(int row, int col) const;

  void zero() { std::fill(values_.begin(), values_.end(), 0.0); }
  void add(int slot_index, double v) { values_[slot_index] += v; }
  double value_at(int slot_index) const { return values_[slot_index]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<int>& col_ptr() const { return col_ptr_; }
  const std::vector<int>& row_idx() const { return row_idx_; }

  int row_of(int slot_index) const { return row_idx_[slot_index]; }
  int col_of(int slot_index) const;

  std::vector<std::vector<double>> to_dense() const;

 private:
  int n_rows_ = 0, n_cols_ = 0;
  std::vector<int> col_ptr_;
  std::vector<int> row_idx_;
  std::vector<double> values_;
};

// Precomputed plan for the parameter chain rule
//   J_solver = J_direct + J_param * P
// where J_direct / J_param are the column subsets of the process-facing
// Jacobian over solver variables vs. diagnosed parameters, and P holds the
// partial derivatives of the parameters with respect to solver variables.
// The product pattern is fixed at build time, so pattern overflow is an
// initialization-time error and solving never allocates.
class ComposePlan {
 public:
  ComposePlan() = default;

  // `full`: process-facing Jacobian over all state columns (frozen pattern);
  // `diagnosed[c]`: column c is owned by a parameter;
  // `param_row_of[c]`: row of P for diagnosed column c (-1 otherwise);
  // `P`: n_param x n_state partial-derivative matrix (frozen pattern).
  static ComposePlan build(const SparseJacobian& full, const std::vector<bool>& diagnosed,
                           const std::vector<int>& param_row_of, const SparseJacobian& P);

  // Fresh zeroed matrix with the solver-Jacobian pattern.
  SparseJacobian make_solver_matrix() const { return solver_template_; }

  // solver = J_direct + J_param * P from the current values of full and P.
  void apply(const SparseJacobian& full, const SparseJacobian& P,
             SparseJacobian& solver) const;

 private:
  SparseJacobian solver_template_;
  std::vector<std::pair<int, int>> direct_;  // (solver_slot, full_slot)
  struct Product {
    int solver_slot;
    int full_slot;
    int p_slot;
  };
  std::vector<Product> products_;
};

}  // namespace mpchem
