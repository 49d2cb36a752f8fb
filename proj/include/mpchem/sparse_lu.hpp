#pragma once

#include <span>
#include <vector>

namespace mpchem {

// Sparse LU factorization with a frozen sparsity pattern and a fixed
// elimination order. The fill pattern is computed once on the first
// factorization and replayed numerically afterwards. No pivoting beyond the
// supplied ordering; a vanishing pivot is reported, not patched.
class SparseLu {
 public:
  enum class Status { Ok, Singular };

  // CSC pattern of A (n x n). `order`, when given, lists the original indices
  // in elimination order (a symmetric permutation); useful when the caller
  // knows a fill-reducing order for the problem structure.
  SparseLu(int n, std::span<const int> col_ptr, std::span<const int> row_idx,
           std::span<const int> order = {});

  // Numeric factorization from values laid out in the constructor pattern.
  Status factor(std::span<const double> values);

  // Solves A x = b in place; factor() must have succeeded.
  void solve(std::span<double> b) const;

  int n() const { return n_; }
  long lu_nonzeros() const {
    return static_cast<long>(l_row_.size() + u_row_.size()) + n_;
  }

 private:
  void symbolic(std::span<const double> values);

  int n_ = 0;
  std::vector<int> perm_;   // perm_[k] = original index eliminated k-th
  std::vector<int> iperm_;  // inverse
  // permuted-A scatter plan: per permuted column, (permuted row, value index)
  std::vector<int> a_col_ptr_;
  std::vector<int> a_row_;
  std::vector<int> a_src_;

  bool symbolic_done_ = false;
  // L: strictly lower triangular, unit diagonal implied; U: strictly upper
  // plus the diagonal stored separately. Column-wise, rows ascending.
  std::vector<int> l_col_ptr_, l_row_;
  std::vector<double> l_val_;
  std::vector<int> u_col_ptr_, u_row_;
  std::vector<double> u_val_;
  std::vector<double> diag_;

  mutable std::vector<double> work_;
  mutable std::vector<double> rhs_;
};

}  // namespace mpchem
