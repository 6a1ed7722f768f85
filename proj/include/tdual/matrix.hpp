#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace tdual {

/// Exact arbitrary-precision integer.  Every computation in the toolkit is
/// carried out over Z with no silent overflow.
using Int = mpz_class;

/// Dense integer matrix (row-major).  Degenerate shapes (0 rows or 0
/// columns) are legal and show up naturally as maps to or from the trivial
/// group.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  Int& operator()(std::size_t i, std::size_t j) { return at(i, j); }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return at(i, j);
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const;
  Matrix transposed() const;
  std::vector<Int> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<Int>& v);

  /// Columns of `right` appended to the columns of this matrix.
  Matrix augmented(const Matrix& right) const;

  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

/// Exact product; uses OpenMP over output rows for large operands.
Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<Int> operator*(const Matrix& a, const std::vector<Int>& x);

/// Exact determinant (Bareiss fraction-free elimination).
Int det(const Matrix& m);

Matrix from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols);

}  // namespace tdual
