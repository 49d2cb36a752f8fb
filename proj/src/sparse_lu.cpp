#include "mpchem/sparse_lu.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mpchem {

SparseLu::SparseLu(int n, std::span<const int> col_ptr, std::span<const int> row_idx,
                   std::span<const int> order)
    : n_(n) {
  if (static_cast<int>(col_ptr.size()) != n + 1)
    throw std::invalid_argument("sparse LU: bad column pointer array");
  perm_.resize(n);
  if (order.empty()) {
    std::iota(perm_.begin(), perm_.end(), 0);
  } else {
    if (static_cast<int>(order.size()) != n)
      throw std::invalid_argument("sparse LU: bad elimination order");
    std::copy(order.begin(), order.end(), perm_.begin());
  }
  iperm_.assign(n, -1);
  for (int k = 0; k < n; ++k) iperm_[perm_[k]] = k;
  for (int k = 0; k < n; ++k)
    if (iperm_[k] < 0) throw std::invalid_argument("sparse LU: order is not a permutation");

  // Scatter plan for the symmetrically permuted matrix B = A(perm, perm):
  // column j of B is column perm[j] of A with rows mapped through iperm.
  a_col_ptr_.assign(n + 1, 0);
  for (int bj = 0; bj < n; ++bj) {
    const int aj = perm_[bj];
    a_col_ptr_[bj + 1] = a_col_ptr_[bj] + (col_ptr[aj + 1] - col_ptr[aj]);
  }
  a_row_.resize(a_col_ptr_[n]);
  a_src_.resize(a_col_ptr_[n]);
  for (int bj = 0; bj < n; ++bj) {
    const int aj = perm_[bj];
    int at = a_col_ptr_[bj];
    for (int s = col_ptr[aj]; s < col_ptr[aj + 1]; ++s) {
      a_row_[at] = iperm_[row_idx[s]];
      a_src_[at] = s;
      ++at;
    }
  }
  work_.assign(n, 0.0);
  rhs_.assign(n, 0.0);
  diag_.assign(n, 0.0);
}

// First factorization: Gilbert-Peierls left-looking elimination computing the
// fill pattern by depth-first reachability over the partially built L.
void SparseLu::symbolic(std::span<const double> values) {
  l_col_ptr_.assign(n_ + 1, 0);
  u_col_ptr_.assign(n_ + 1, 0);
  l_row_.clear();
  l_val_.clear();
  u_row_.clear();
  u_val_.clear();

  std::vector<int> mark(n_, -1);
  std::vector<int> pattern;
  pattern.reserve(64);

  for (int j = 0; j < n_; ++j) {
    // reach: every row index appearing in column j of L+U. A node k < j
    // propagates through the rows of L(:,k); nodes >= j are terminal.
    pattern.clear();
    for (int s = a_col_ptr_[j]; s < a_col_ptr_[j + 1]; ++s) {
      const int seed = a_row_[s];
      if (mark[seed] != j) {
        mark[seed] = j;
        pattern.push_back(seed);
      }
    }
    for (size_t w = 0; w < pattern.size(); ++w) {
      const int node = pattern[w];
      if (node >= j) continue;
      for (int s = l_col_ptr_[node]; s < l_col_ptr_[node + 1]; ++s) {
        const int child = l_row_[s];
        if (mark[child] != j) {
          mark[child] = j;
          pattern.push_back(child);
        }
      }
    }
    std::sort(pattern.begin(), pattern.end());

    // numeric left-looking solve for column j
    for (int r : pattern) work_[r] = 0.0;
    for (int s = a_col_ptr_[j]; s < a_col_ptr_[j + 1]; ++s)
      work_[a_row_[s]] = values[a_src_[s]];
    for (int r : pattern) {
      if (r >= j) break;
      const double xk = work_[r];
      if (xk != 0.0)
        for (int s = l_col_ptr_[r]; s < l_col_ptr_[r + 1]; ++s)
          work_[l_row_[s]] -= xk * l_val_[s];
    }

    double pivot = 0.0;
    for (int r : pattern) {
      if (r < j) {
        u_row_.push_back(r);
        u_val_.push_back(work_[r]);
      } else if (r == j) {
        pivot = work_[r];
      }
    }
    diag_[j] = pivot;
    if (pivot != 0.0) {
      const double inv = 1.0 / pivot;
      for (int r : pattern) {
        if (r > j) {
          l_row_.push_back(r);
          l_val_.push_back(work_[r] * inv);
        }
      }
    } else {
      for (int r : pattern) {
        if (r > j) {
          l_row_.push_back(r);
          l_val_.push_back(0.0);
        }
      }
    }
    for (int r : pattern) work_[r] = 0.0;
    l_col_ptr_[j + 1] = static_cast<int>(l_row_.size());
    u_col_ptr_[j + 1] = static_cast<int>(u_row_.size());
  }
  symbolic_done_ = true;
}

SparseLu::Status SparseLu::factor(std::span<const double> values) {
  if (!symbolic_done_) {
    symbolic(values);
  } else {
    // replay the cached pattern; ascending row order is a valid elimination
    // order because the pivot sequence is fixed
    for (int j = 0; j < n_; ++j) {
      for (int s = u_col_ptr_[j]; s < u_col_ptr_[j + 1]; ++s) work_[u_row_[s]] = 0.0;
      for (int s = l_col_ptr_[j]; s < l_col_ptr_[j + 1]; ++s) work_[l_row_[s]] = 0.0;
      work_[j] = 0.0;
      for (int s = a_col_ptr_[j]; s < a_col_ptr_[j + 1]; ++s)
        work_[a_row_[s]] = values[a_src_[s]];
      for (int s = u_col_ptr_[j]; s < u_col_ptr_[j + 1]; ++s) {
        const int k = u_row_[s];
        const double xk = work_[k];
        u_val_[s] = xk;
        if (xk != 0.0)
          for (int t = l_col_ptr_[k]; t < l_col_ptr_[k + 1]; ++t)
            work_[l_row_[t]] -= xk * l_val_[t];
      }
      const double pivot = work_[j];
      diag_[j] = pivot;
      if (pivot != 0.0) {
        const double inv = 1.0 / pivot;
        for (int s = l_col_ptr_[j]; s < l_col_ptr_[j + 1]; ++s)
          l_val_[s] = work_[l_row_[s]] * inv;
      }
    }
  }

  // zero-pivot check relative to the column scale
  for (int j = 0; j < n_; ++j) {
    double scale = std::abs(diag_[j]);
    for (int s = u_col_ptr_[j]; s < u_col_ptr_[j + 1]; ++s)
      scale = std::max(scale, std::abs(u_val_[s]));
    for (int s = l_col_ptr_[j]; s < l_col_ptr_[j + 1]; ++s)
      scale = std::max(scale, std::abs(l_val_[s] * diag_[j]));
    if (std::abs(diag_[j]) <= 1.0e-14 * scale || diag_[j] == 0.0 ||
        !std::isfinite(diag_[j]))
      return Status::Singular;
  }
  return Status::Ok;
}

void SparseLu::solve(std::span<double> b) const {
  for (int k = 0; k < n_; ++k) rhs_[k] = b[perm_[k]];
  // L y = b (unit diagonal)
  for (int j = 0; j < n_; ++j) {
    const double xj = rhs_[j];
    if (xj != 0.0)
      for (int s = l_col_ptr_[j]; s < l_col_ptr_[j + 1]; ++s)
        rhs_[l_row_[s]] -= xj * l_val_[s];
  }
  // U x = y
  for (int j = n_ - 1; j >= 0; --j) {
    const double xj = rhs_[j] / diag_[j];
    rhs_[j] = xj;
    if (xj != 0.0)
      for (int s = u_col_ptr_[j]; s < u_col_ptr_[j + 1]; ++s)
        rhs_[u_row_[s]] -= xj * u_val_[s];
  }
  for (int k = 0; k < n_; ++k) b[perm_[k]] = rhs_[k];
}

}  // namespace mpchem
