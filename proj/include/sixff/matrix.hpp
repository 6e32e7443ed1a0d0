#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sixff/field.hpp"

namespace sixff {

// Dense matrix over an exact field, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Field k);

  static Matrix identity(int n, Field k);
  static Matrix zero(int rows, int cols, Field k) { return Matrix(rows, cols, k); }
  static Matrix from_ints(const std::vector<std::vector<long>>& rows, Field k);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Field field() const { return k_; }

  Scalar& at(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
  const Scalar& at(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  Matrix kron(const Matrix& o) const;
  Matrix block(int r0, int c0, int rows, int cols) const;
  void set_block(int r0, int c0, const Matrix& b);
  static Matrix hstack(const std::vector<Matrix>& parts, int rows, Field k);
  static Matrix vstack(const std::vector<Matrix>& parts, int cols, Field k);
  static Matrix direct_sum(const std::vector<Matrix>& parts, Field k);

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return r_ == c_; }
  Scalar trace() const;

  int rank() const;
  std::optional<Matrix> inverse() const;
  Matrix inverse_or_throw(const char* what) const;
  // Basis of the null space as columns.
  Matrix nullspace() const;
  // Indices of columns forming a basis of the column space (first pivots).
  std::vector<int> pivot_columns() const;
  Matrix columns(const std::vector<int>& idx) const;
  // For a matrix B with independent columns, a matrix L with L*B = I; L*v gives coordinates of v in span(B).
  Matrix left_inverse() const;
  // Solve A x = b for x (any solution), if consistent.
  std::optional<Matrix> solve(const Matrix& b) const;

  std::string str() const;

 private:
  int rref_inplace(std::vector<int>* pivots);
  int r_ = 0, c_ = 0;
  Field k_;
  std::vector<Scalar> d_;
};

}  // namespace sixff
