#include "mpchem/sparse.hpp"

namespace mpchem {

SparseJacobian SparseJacobian::freeze(const JacobianPattern& pattern) {
  SparseJacobian m;
  m.n_rows_ = pattern.n_rows();
  m.n_cols_ = pattern.n_cols();

  auto entries = pattern.entries();  // copy: sort by (col, row), dedupe
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.second, a.first) < std::tie(b.second, b.first);
            });
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

  m.col_ptr_.assign(m.n_cols_ + 1, 0);
  m.row_idx_.reserve(entries.size());
  for (const auto& [row, col] : entries) {
    m.row_idx_.push_back(row);
    ++m.col_ptr_[col + 1];
  }
  for (int c = 0; c < m.n_cols_; ++c) m.col_ptr_[c + 1] += m.col_ptr_[c];
  m.values_.assign(m.row_idx_.size(), 0.0);
  return m;
}

int SparseJacobian::find_slot(int row, int col) const {
  if (col < 0 || col >= n_cols_) return -1;
  auto begin = row_idx_.begin() + col_ptr_[col];
  auto end = row_idx_.begin() + col_ptr_[col + 1];
  auto it = std::lower_bound(begin, end, row);
  if (it == end || *it != row) return -1;
  return static_cast<int>(it - row_idx_.begin());
}

int SparseJacobian::slot(int row, int col) const {
  int s = find_slot(row, col);
  if (s < 0)
    throw std::out_of_range("jacobian slot (" + std::to_string(row) + ", " +
                            std::to_string(col) + ") was not registered");
  return s;
}

int SparseJacobian::col_of(int slot_index) const {
  auto it = std::upper_bound(col_ptr_.begin(), col_ptr_.end(), slot_index);
  return static_cast<int>(it - col_ptr_.begin()) - 1;
}

std::vector<std::vector<double>> SparseJacobian::to_dense() const {
  std::vector<std::vector<double>> d(n_rows_, std::vector<double>(n_cols_, 0.0));
  for (int c = 0; c < n_cols_; ++c)
    for (int s = col_ptr_[c]; s < col_ptr_[c + 1]; ++s) d[row_idx_[s]][c] = values_[s];
  return d;
}

ComposePlan ComposePlan::build(const SparseJacobian& full,
                               const std::vector<bool>& diagnosed,
                               const std::vector<int>& param_row_of,
                               const SparseJacobian& P) {
  const int n = full.n_cols();
  if (static_cast<int>(diagnosed.size()) != n || full.n_rows() != n)
    throw std::invalid_argument("compose: dimension mismatch");

  // Row-wise view of P for expanding diagnosed columns.
  std::vector<std::vector<std::pair<int, int>>> p_rows(P.n_rows());  // (col, p_slot)
  for (int c = 0; c < P.n_cols(); ++c)
    for (int s = P.col_ptr()[c]; s < P.col_ptr()[c + 1]; ++s)
      p_rows[P.row_idx()[s]].push_back({c, s});

  struct RawDirect {
    int row, col, full_slot;
  };
  struct RawProduct {
    int row, col, full_slot, p_slot;
  };
  std::vector<RawDirect> direct;
  std::vector<RawProduct> products;
  JacobianPattern pattern(n, n);

  for (int c = 0; c < n; ++c) {
    for (int s = full.col_ptr()[c]; s < full.col_ptr()[c + 1]; ++s) {
      const int r = full.row_idx()[s];
      if (diagnosed[r]) continue;  // diagnosed entries have no solver row
      if (!diagnosed[c]) {
        direct.push_back({r, c, s});
        pattern.add(r, c);
      } else {
        const int w = param_row_of[c];
        if (w < 0) throw std::logic_error("diagnosed column without parameter row");
        for (const auto& [j, p_slot] : p_rows[w]) {
          if (diagnosed[j])
            throw std::invalid_argument(
                "compose: parameter depends on another diagnosed variable");
          products.push_back({r, j, s, p_slot});
          pattern.add(r, j);
        }
      }
    }
  }

  ComposePlan plan;
  plan.solver_template_ = SparseJacobian::freeze(pattern);
  for (const auto& d : direct)
    plan.direct_.push_back({plan.solver_template_.slot(d.row, d.col), d.full_slot});
  for (const auto& p : products)
    plan.products_.push_back(
        {plan.solver_template_.slot(p.row, p.col), p.full_slot, p.p_slot});
  return plan;
}

void ComposePlan::apply(const SparseJacobian& full, const SparseJacobian& P,
                        SparseJacobian& solver) const {
  solver.zero();
  auto out = solver.values();
  auto fv = full.values();
  auto pv = P.values();
  for (const auto& [dst, src] : direct_) out[dst] += fv[src];
  for (const auto& p : products_) out[p.solver_slot] += fv[p.full_slot] * pv[p.p_slot];
}

}  // namespace mpchem
