#pragma once

#include "bpchain/sparse_matrix.hpp"

#include <algorithm>
#include <vector>

namespace bpchain {

/// Tie-breaking among pivot candidates of minimal valuation.
enum class PivotRule {
  lex_first,     // smallest (row, col)
  lex_last,      // largest (row, col)
  column_major,  // smallest (col, row)
};

/// left * A * right = diag(p^{e_0}, ..., p^{e_{rank-1}}, 0, ...), with the
/// exponents nondecreasing. left and right are invertible over Z_(p); their
/// inverses are carried along for cokernel generators and kernel coordinates.
struct SmithDecomposition {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::vector<int> exponents;
  Vector diagonal;
  SparseMatrix left;
  SparseMatrix right;
  SparseMatrix left_inverse;
  SparseMatrix right_inverse;
};

namespace detail {

using DenseRows = std::vector<Vector>;

inline DenseRows dense_identity(std::size_t n) {
  DenseRows m(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline SparseMatrix to_sparse(const DenseRows& m, std::size_t cols) {
  SparseMatrix out(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(m[i][j]) != 0) out.set(i, j, m[i][j]);
  return out;
}

inline bool better_pivot(PivotRule rule, std::size_t r, std::size_t c, std::size_t br,
                         std::size_t bc) {
  switch (rule) {
    case PivotRule::lex_first:
      return r < br || (r == br && c < bc);
    case PivotRule::lex_last:
      return r > br || (r == br && c > bc);
    case PivotRule::column_major:
      return c < bc || (c == bc && r < br);
  }
  return false;
}

}  // namespace detail

/// Smith normal form over the discrete valuation ring Z_(p).
///
/// Each step picks an entry of minimal valuation in the untouched submatrix;
/// it divides every other entry there, so plain row and column elimination
/// never needs gcd steps and never lowers the remaining minimum. That makes
/// the exponents come out nondecreasing in pivot order.
inline SmithDecomposition smith_normal_form(const SparseMatrix& a, Prime p,
                                            PivotRule rule = PivotRule::lex_first) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  detail::DenseRows w(m, Vector(n));
  std::vector<std::vector<int>> val(m, std::vector<int>(n, kInfiniteValuation));
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [j, x] : a.row(i)) {
      if (!is_p_local(x, p)) throw Error("smith_normal_form: entry is not p-local");
      w[i][j] = x;
      val[i][j] = valuation(x, p);
    }

  detail::DenseRows left = detail::dense_identity(m);
  detail::DenseRows left_inv = detail::dense_identity(m);
  detail::DenseRows right = detail::dense_identity(n);
  detail::DenseRows right_inv = detail::dense_identity(n);

  std::vector<char> row_active(m, 1), col_active(n, 1);
  std::vector<std::size_t> pivot_rows, pivot_cols;
  std::vector<int> exponents;

  for (;;) {
    int best = kInfiniteValuation;
    std::size_t br = 0, bc = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!row_active[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!col_active[j]) continue;
        int v = val[i][j];
        if (v < best || (v == best && v != kInfiniteValuation &&
                         detail::better_pivot(rule, i, j, br, bc))) {
          best = v;
          br = i;
          bc = j;
        }
      }
    }
    if (best == kInfiniteValuation) break;

    const std::size_t r = br, c = bc;
    const PLocalScalar power(prime_power(p, best));
    const PLocalScalar unit = w[r][c] / power;

    // Normalize the pivot to exactly p^e.
    if (unit != 1) {
      const PLocalScalar inv = 1 / unit;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(w[r][j]) != 0) w[r][j] *= inv;
      for (auto& x : left[r])
        if (sgn(x) != 0) x *= inv;
      for (std::size_t t = 0; t < m; ++t)
        if (sgn(left_inv[t][r]) != 0) left_inv[t][r] *= unit;
    }

    std::vector<std::size_t> pivot_row_support;
    for (std::size_t j = 0; j < n; ++j)
      if (col_active[j] && sgn(w[r][j]) != 0) pivot_row_support.push_back(j);

    // Clear the pivot column.
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || !row_active[i] || sgn(w[i][c]) == 0) continue;
      const PLocalScalar f = w[i][c] / power;
      for (std::size_t j : pivot_row_support) {
        w[i][j] -= f * w[r][j];
        val[i][j] = valuation(w[i][j], p);
      }
      for (std::size_t j = 0; j < m; ++j)
        if (sgn(left[r][j]) != 0) left[i][j] -= f * left[r][j];
      for (std::size_t t = 0; t < m; ++t)
        if (sgn(left_inv[t][i]) != 0) left_inv[t][r] += f * left_inv[t][i];
    }

    // Clear the pivot row; only the pivot row of W changes.
    for (std::size_t j : pivot_row_support) {
      if (j == c) continue;
      const PLocalScalar f = w[r][j] / power;
      w[r][j] = 0;
      val[r][j] = kInfiniteValuation;
      for (std::size_t t = 0; t < n; ++t)
        if (sgn(right[t][c]) != 0) right[t][j] -= f * right[t][c];
      for (std::size_t t = 0; t < n; ++t)
        if (sgn(right_inv[j][t]) != 0) right_inv[c][t] += f * right_inv[j][t];
    }

    row_active[r] = 0;
    col_active[c] = 0;
    pivot_rows.push_back(r);
    pivot_cols.push_back(c);
    exponents.push_back(best);
  }

  std::vector<std::size_t> row_order = pivot_rows, col_order = pivot_cols;
  for (std::size_t i = 0; i < m; ++i)
    if (row_active[i]) row_order.push_back(i);
  for (std::size_t j = 0; j < n; ++j)
    if (col_active[j]) col_order.push_back(j);

  SmithDecomposition out;
  out.rows = m;
  out.cols = n;
  out.rank = exponents.size();
  out.exponents = exponents;
  for (int e : exponents) out.diagonal.emplace_back(prime_power(p, e));

  detail::DenseRows l(m), li(m, Vector(m)), rr(n, Vector(n)), ri(n);
  for (std::size_t k = 0; k < m; ++k) l[k] = std::move(left[row_order[k]]);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t k = 0; k < m; ++k) li[t][k] = left_inv[t][row_order[k]];
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t k = 0; k < n; ++k) rr[t][k] = right[t][col_order[k]];
  for (std::size_t k = 0; k < n; ++k) ri[k] = std::move(right_inv[col_order[k]]);
  out.left = detail::to_sparse(l, m);
  out.left_inverse = detail::to_sparse(li, m);
  out.right = detail::to_sparse(rr, n);
  out.right_inverse = detail::to_sparse(ri, n);
  return out;
}

}  // namespace bpchain
