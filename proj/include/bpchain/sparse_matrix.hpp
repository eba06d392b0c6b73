#pragma once

#include "bpchain/scalar.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace bpchain {

using Vector = std::vector<PLocalScalar>;

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

/// Row-major sparse matrix over the rationals. Absent entries are zero and
/// stored entries are never zero.
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, PLocalScalar>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static SparseMatrix from_dense(const std::vector<Vector>& rows, std::size_t cols) {
    SparseMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i].at(j));
    return m;
  }

  /// Builds a matrix whose columns are the given vectors, all of length `rows`.
  static SparseMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    SparseMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error("from_columns: length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m.set(i, j, columns[j][i]);
    }
    return m;
  }

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  PLocalScalar get(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = data_[r].find(c);
    return it == data_[r].end() ? PLocalScalar(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, const PLocalScalar& v) {
    check(r, c);
    if (sgn(v) == 0)
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }

  void add(std::size_t r, std::size_t c, const PLocalScalar& v) {
    check(r, c);
    if (sgn(v) == 0) return;
    auto [it, inserted] = data_[r].try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (sgn(it->second) == 0) data_[r].erase(it);
    }
  }

  const Row& row(std::size_t r) const { return data_.at(r); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  Vector column(std::size_t c) const {
    Vector v(rows());
    for (std::size_t r = 0; r < rows(); ++r) v[r] = get(r, c);
    return v;
  }

  std::vector<Vector> columns() const {
    std::vector<Vector> out(cols(), Vector(rows()));
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : data_[r]) out[c][r] = v;
    return out;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw Error("apply: dimension mismatch");
    Vector y(rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
    return y;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows()) throw Error("matrix product: dimension mismatch");
    SparseMatrix out(a.rows(), b.cols_);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (const auto& [k, av] : a.data_[r])
        for (const auto& [c, bv] : b.data_[k]) out.add(r, c, av * bv);
    return out;
  }

  /// [a | b]
  static SparseMatrix hconcat(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows()) throw Error("hconcat: row mismatch");
    SparseMatrix out(a.rows(), a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      out.data_[r] = a.data_[r];
      for (const auto& [c, v] : b.data_[r]) out.data_[r].emplace(a.cols_ + c, v);
    }
    return out;
  }

  SparseMatrix select_columns(const std::vector<std::size_t>& which) const {
    std::vector<std::size_t> position(cols_, SIZE_MAX);
    for (std::size_t j = 0; j < which.size(); ++j) position.at(which[j]) = j;
    SparseMatrix out(rows(), which.size());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : data_[r])
        if (position[c] != SIZE_MAX) out.data_[r].emplace(position[c], v);
    return out;
  }

  SparseMatrix select_rows(const std::vector<std::size_t>& which) const {
    SparseMatrix out(which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); ++i) out.data_[i] = data_.at(which[i]);
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows() || c >= cols_) throw Error("matrix index out of range");
  }

  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

}  // namespace bpchain
