#include "toriclg/sparse_matrix.hpp"

#include "toriclg/errors.hpp"

#include <map>

namespace toriclg {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back(i, Rational(1));
  return m;
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& dense,
                                          std::size_t cols) {
  RationalMatrix m(dense.size(), cols);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) throw InternalError("from_dense: ragged rows");
    m.data_[r] = SparseVector::from_dense(dense[r]);
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<SparseVector>& columns,
                                            std::size_t rows) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c].entries()) m.data_[r].push_back(c, v);
  return m;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const { return data_[r].get(c); }

void RationalMatrix::set(std::size_t r, std::size_t c, Rational value) {
  if (r >= rows_ || c >= cols_) throw InternalError("RationalMatrix::set out of range");
  data_[r].set(c, std::move(value));
}

void RationalMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw InternalError("RationalMatrix::add out of range");
  data_[r].add(c, value);
}

void RationalMatrix::set_row(std::size_t r, SparseVector row) {
  if (row.max_index_plus_one() > cols_) throw InternalError("RationalMatrix::set_row out of range");
  data_[r] = std::move(row);
}

SparseVector RationalMatrix::column(std::size_t c) const {
  SparseVector col;
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational v = data_[r].get(c);
    if (v != 0) col.push_back(r, std::move(v));
  }
  return col;
}

SparseVector RationalMatrix::apply(const SparseVector& x) const {
  if (x.max_index_plus_one() > cols_) throw InternalError("RationalMatrix::apply dimension mismatch");
  SparseVector y;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (data_[r].empty()) continue;
    Rational v = dot(data_[r], x);
    if (v != 0) y.push_back(r, std::move(v));
  }
  return y;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InternalError("RationalMatrix product dimension mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    SparseVector acc;
    for (const auto& [k, v] : data_[r].entries()) acc.axpy(v, rhs.data_[k]);
    out.data_[r] = std::move(acc);
  }
  return out;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r].entries()) t.data_[c].push_back(r, v);
  return t;
}

bool RationalMatrix::is_zero() const {
  for (const auto& row : data_)
    if (!row.empty()) return false;
  return true;
}

std::size_t RationalMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.nonzeros();
  return n;
}

}  // namespace toriclg
