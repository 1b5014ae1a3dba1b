#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cuspk::algebra {

using BigInt = mpz_class;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix diagonal(const std::vector<BigInt>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_diagonal() const;

  IntegerMatrix transposed() const;
  /// Columns [first, first + count).
  IntegerMatrix column_block(std::size_t first, std::size_t count) const;
  /// Horizontal concatenation; row counts must agree.
  static IntegerMatrix concat_columns(const IntegerMatrix& left, const IntegerMatrix& right);

  void swap_rows(std::size_t i, std::size_t k);
  void swap_cols(std::size_t j, std::size_t k);
  /// row_i += factor * row_k
  void add_row_multiple(std::size_t i, std::size_t k, const BigInt& factor);
  /// col_j += factor * col_k
  void add_col_multiple(std::size_t j, std::size_t k, const BigInt& factor);
  void negate_row(std::size_t i);

  /// Exact determinant by fraction-free (Bareiss) elimination. Square only.
  BigInt determinant() const;

  friend IntegerMatrix operator*(const IntegerMatrix& lhs, const IntegerMatrix& rhs);
  friend bool operator==(const IntegerMatrix& lhs, const IntegerMatrix& rhs);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

/// Column-compressed sparse integer matrix. Boundary maps of large chain
/// complexes are stored this way; each column is sorted by row index and
/// holds no explicit zeros.
class SparseIntegerMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    BigInt value;
  };
  using Column = std::vector<Entry>;

  SparseIntegerMatrix() = default;
  SparseIntegerMatrix(std::size_t rows, std::size_t cols);

  static SparseIntegerMatrix from_dense(const IntegerMatrix& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;

  /// Accumulates `value` into entry (row, col).
  void add(std::size_t row, std::size_t col, long value);
  const Column& column(std::size_t j) const { return columns_[j]; }

  IntegerMatrix to_dense() const;
  bool product_is_zero(const SparseIntegerMatrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> columns_;
};

}  // namespace cuspk::algebra
