#include "sixff/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace sixff {

Matrix::Matrix(int rows, int cols, Field k)
    : r_(rows), c_(cols), k_(k), d_(static_cast<size_t>(rows) * cols, k.zero()) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
}

Matrix Matrix::identity(int n, Field k) {
  Matrix m(n, n, k);
  for (int i = 0; i < n; ++i) m.at(i, i) = k.one();
  return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows, Field k) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c, k);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix");
    for (int j = 0; j < c; ++j) m.at(i, j) = k.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix product dimension mismatch");
  if (!(k_ == o.k_)) throw FieldMismatch("matrix product across fields");
  Matrix m(r_, o.c_, k_);
  for (int i = 0; i < r_; ++i)
    for (int l = 0; l < c_; ++l) {
      const Scalar& a = at(i, l);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        const Scalar& b = o.at(l, j);
        if (!b.is_zero()) m.at(i, j) += a * b;
      }
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum dimension mismatch");
  Matrix m = *this;
  for (size_t i = 0; i < d_.size(); ++i) m.d_[i] += o.d_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix difference dimension mismatch");
  Matrix m = *this;
  for (size_t i = 0; i < d_.size(); ++i) m.d_[i] -= o.d_[i];
  return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.d_) x *= s;
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && k_ == o.k_ && d_ == o.d_;
}

Matrix Matrix::transpose() const {
  Matrix m(c_, r_, k_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::kron(const Matrix& o) const {
  Matrix m(r_ * o.r_, c_ * o.c_, k_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      const Scalar& a = at(i, j);
      if (a.is_zero()) continue;
      for (int k = 0; k < o.r_; ++k)
        for (int l = 0; l < o.c_; ++l) m.at(i * o.r_ + k, j * o.c_ + l) = a * o.at(k, l);
    }
  return m;
}

Matrix Matrix::block(int r0, int c0, int rows, int cols) const {
  Matrix m(rows, cols, k_);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw std::out_of_range("block outside matrix");
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts, int rows, Field k) {
  int cols = 0;
  for (const auto& p : parts) cols += p.c_;
  Matrix m(rows, cols, k);
  int c = 0;
  for (const auto& p : parts) {
    m.set_block(0, c, p);
    c += p.c_;
  }
  return m;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts, int cols, Field k) {
  int rows = 0;
  for (const auto& p : parts) rows += p.r_;
  Matrix m(rows, cols, k);
  int r = 0;
  for (const auto& p : parts) {
    m.set_block(r, 0, p);
    r += p.r_;
  }
  return m;
}

Matrix Matrix::direct_sum(const std::vector<Matrix>& parts, Field k) {
  int rows = 0, cols = 0;
  for (const auto& p : parts) rows += p.r_, cols += p.c_;
  Matrix m(rows, cols, k);
  int r = 0, c = 0;
  for (const auto& p : parts) {
    m.set_block(r, c, p);
    r += p.r_;
    c += p.c_;
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : d_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (r_ != c_) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
  return true;
}

Scalar Matrix::trace() const {
  Scalar t = k_.zero();
  for (int i = 0; i < std::min(r_, c_); ++i) t += at(i, i);
  return t;
}

int Matrix::rref_inplace(std::vector<int>* pivots) {
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int piv = -1;
    for (int i = row; i < r_; ++i)
      if (!at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < c_; ++j) std::swap(at(piv, j), at(row, j));
    Scalar inv = at(row, col).inverse();
    for (int j = col; j < c_; ++j) at(row, j) *= inv;
    for (int i = 0; i < r_; ++i) {
      if (i == row || at(i, col).is_zero()) continue;
      Scalar f = at(i, col);
      for (int j = col; j < c_; ++j)
        if (!at(row, j).is_zero()) at(i, j) -= f * at(row, j);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return row;
}

int Matrix::rank() const {
  Matrix m = *this;
  return m.rref_inplace(nullptr);
}

std::optional<Matrix> Matrix::inverse() const {
  if (r_ != c_) return std::nullopt;
  Matrix aug = hstack({*this, identity(r_, k_)}, r_, k_);
  std::vector<int> piv;
  int rk = aug.rref_inplace(&piv);
  if (rk < r_ || (r_ > 0 && piv[r_ - 1] >= r_)) return std::nullopt;
  return aug.block(0, r_, r_, r_);
}

Matrix Matrix::inverse_or_throw(const char* what) const {
  auto inv = inverse();
  if (!inv) throw std::domain_error(std::string("singular matrix: ") + what);
  return *inv;
}

Matrix Matrix::nullspace() const {
  Matrix m = *this;
  std::vector<int> piv;
  m.rref_inplace(&piv);
  std::vector<bool> is_piv(c_, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < c_; ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  Matrix n(c_, static_cast<int>(free_cols.size()), k_);
  for (size_t f = 0; f < free_cols.size(); ++f) {
    int fc = free_cols[f];
    n.at(fc, static_cast<int>(f)) = k_.one();
    for (size_t i = 0; i < piv.size(); ++i) n.at(piv[i], static_cast<int>(f)) = -m.at(static_cast<int>(i), fc);
  }
  return n;
}

std::vector<int> Matrix::pivot_columns() const {
  Matrix m = *this;
  std::vector<int> piv;
  m.rref_inplace(&piv);
  return piv;
}

Matrix Matrix::columns(const std::vector<int>& idx) const {
  Matrix m(r_, static_cast<int>(idx.size()), k_);
  for (int i = 0; i < r_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m.at(i, static_cast<int>(j)) = at(i, idx[j]);
  return m;
}

Matrix Matrix::left_inverse() const {
  // Pick rows where B is invertible: pivot columns of B^T.
  std::vector<int> rows = transpose().pivot_columns();
  if (static_cast<int>(rows.size()) != c_) throw std::domain_error("left_inverse: columns are dependent");
  Matrix sub(c_, c_, k_);
  for (int i = 0; i < c_; ++i)
    for (int j = 0; j < c_; ++j) sub.at(i, j) = at(rows[i], j);
  Matrix inv = sub.inverse_or_throw("left_inverse");
  Matrix l(c_, r_, k_);
  for (int i = 0; i < c_; ++i)
    for (int j = 0; j < c_; ++j) l.at(i, rows[j]) = inv.at(i, j);
  return l;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  if (b.r_ != r_) throw std::invalid_argument("solve: dimension mismatch");
  Matrix aug = hstack({*this, b}, r_, k_);
  std::vector<int> piv;
  int rk = aug.rref_inplace(&piv);
  for (int i = 0; i < rk; ++i)
    if (piv[i] >= c_) return std::nullopt;
  Matrix x(c_, b.c_, k_);
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < b.c_; ++j) x.at(piv[i], j) = aug.at(i, c_ + j);
  return x;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < r_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << at(i, j).str();
  }
  os << ']';
  return os.str();
}

}  // namespace sixff
