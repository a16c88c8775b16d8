#pragma once

#include "toriclg/rational.hpp"

#include <cstddef>
#include <vector>

namespace toriclg {

/// Row-major sparse matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& dense,
                                   std::size_t cols);
  static RationalMatrix from_columns(const std::vector<SparseVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Rational value);
  void add(std::size_t r, std::size_t c, const Rational& value);

  const SparseVector& row(std::size_t r) const { return data_[r]; }
  void set_row(std::size_t r, SparseVector row);
  SparseVector column(std::size_t c) const;

  /// A * x
  SparseVector apply(const SparseVector& x) const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix transposed() const;

  bool is_zero() const;
  std::size_t nonzeros() const;

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

}  // namespace toriclg
