#include "cuspk/algebra/integer_matrix.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "cuspk/errors.hpp"

namespace cuspk::algebra {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("IntegerMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::diagonal(const std::vector<BigInt>& entries) {
  IntegerMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return sgn(v) == 0; });
}

bool IntegerMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && sgn((*this)(i, j)) != 0) return false;
  return true;
}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw InvalidArgument("column_block out of range");
  IntegerMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntegerMatrix IntegerMatrix::concat_columns(const IntegerMatrix& left, const IntegerMatrix& right) {
  if (left.rows_ != right.rows_) throw InvalidArgument("concat_columns: row mismatch");
  IntegerMatrix out(left.rows_, left.cols_ + right.cols_);
  for (std::size_t i = 0; i < left.rows_; ++i) {
    for (std::size_t j = 0; j < left.cols_; ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out(i, left.cols_ + j) = right(i, j);
  }
  return out;
}

void IntegerMatrix::swap_rows(std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(i, j), (*this)(k, j));
}

void IntegerMatrix::swap_cols(std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, j), (*this)(i, k));
}

void IntegerMatrix::add_row_multiple(std::size_t i, std::size_t k, const BigInt& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const BigInt& src = (*this)(k, j);
    if (sgn(src) != 0) (*this)(i, j) += factor * src;
  }
}

void IntegerMatrix::add_col_multiple(std::size_t j, std::size_t k, const BigInt& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const BigInt& src = (*this)(i, k);
    if (sgn(src) != 0) (*this)(i, j) += factor * src;
  }
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

BigInt IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntegerMatrix a = *this;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && sgn(a(swap_with, k)) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntegerMatrix operator*(const IntegerMatrix& lhs, const IntegerMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw InvalidArgument("matrix product: shape mismatch");
  IntegerMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const BigInt& a = lhs(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const BigInt& b = rhs(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  return out;
}

bool operator==(const IntegerMatrix& lhs, const IntegerMatrix& rhs) {
  return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j).get_str();
    }
    os << ']';
  }
  return os << ']';
}

SparseIntegerMatrix::SparseIntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), columns_(cols) {}

SparseIntegerMatrix SparseIntegerMatrix::from_dense(const IntegerMatrix& dense) {
  SparseIntegerMatrix s(dense.rows(), dense.cols());
  for (std::size_t j = 0; j < dense.cols(); ++j)
    for (std::size_t i = 0; i < dense.rows(); ++i)
      if (sgn(dense(i, j)) != 0)
        s.columns_[j].push_back(Entry{static_cast<std::uint32_t>(i), dense(i, j)});
  return s;
}

std::size_t SparseIntegerMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseIntegerMatrix::add(std::size_t row, std::size_t col, long value) {
  if (row >= rows_ || col >= cols_) throw InvalidArgument("SparseIntegerMatrix::add out of range");
  if (value == 0) return;
  auto& column = columns_[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const Entry& e, std::size_t r) { return e.row < r; });
  if (it != column.end() && it->row == row) {
    it->value += value;
    if (sgn(it->value) == 0) column.erase(it);
  } else {
    column.insert(it, Entry{static_cast<std::uint32_t>(row), BigInt(value)});
  }
}

IntegerMatrix SparseIntegerMatrix::to_dense() const {
  IntegerMatrix d(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : columns_[j]) d(e.row, j) = e.value;
  return d;
}

bool SparseIntegerMatrix::product_is_zero(const SparseIntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("sparse product: shape mismatch");
  std::vector<BigInt> acc(rows_);
  std::vector<std::uint32_t> touched;
  for (std::size_t j = 0; j < rhs.cols_; ++j) {
    touched.clear();
    for (const auto& e : rhs.columns_[j]) {
      for (const auto& f : columns_[e.row]) {
        if (sgn(acc[f.row]) == 0) touched.push_back(f.row);
        acc[f.row] += e.value * f.value;
      }
    }
    bool zero = true;
    for (auto r : touched) {
      if (sgn(acc[r]) != 0) zero = false;
      acc[r] = 0;
    }
    if (!zero) return false;
  }
  return true;
}

}  // namespace cuspk::algebra
