#ifndef VANCYC_MATRIX_HPP
#define VANCYC_MATRIX_HPP

#include <ostream>
#include <vector>

#include "vancyc/errors.hpp"
#include "vancyc/upoly.hpp"

namespace vancyc {

// Dense matrix over an exact field K. All arithmetic is exact; elimination
// uses first-nonzero-pivot selection so results are deterministic.
template <typename K>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, K(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw Error(ErrorCode::Internal, "ragged matrix rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  K& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const K& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == K(0))) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::Internal, "matrix shape mismatch in product");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const K& a = at(i, k);
        if (a == K(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
      }
    return r;
  }
  Matrix scaled(const K& a) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x * a;
    return r;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw Error(ErrorCode::Internal, "vector length mismatch");
    std::vector<K> r(rows_, K(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!(at(i, j) == K(0))) r[i] += at(i, j) * v[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Matrix column(int j) const {
    Matrix r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
  }

  // Columns side by side.
  static Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error(ErrorCode::Internal, "hcat row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
      for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
    }
    return r;
  }

  Matrix submatrix(int r0, int c0, int nr, int nc) const {
    Matrix r(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
  }

  // In-place row echelon form; returns pivot columns. First nonzero pivot in
  // row order breaks ties.
  std::vector<int> row_reduce() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int p = -1;
      for (int i = row; i < rows_; ++i)
        if (!(at(i, col) == K(0))) { p = i; break; }
      if (p < 0) continue;
      if (p != row)
        for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
      K inv = K(1) / at(row, col);
      for (int j = col; j < cols_; ++j) at(row, j) = at(row, j) * inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == row || at(i, col) == K(0)) continue;
        K f = at(i, col);
        for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  int rank() const {
    Matrix m = *this;
    return static_cast<int>(m.row_reduce().size());
  }

  // Kernel basis as matrix columns (deterministic: free columns in order).
  Matrix kernel() const {
    Matrix m = *this;
    std::vector<int> pivots = m.row_reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots) is_pivot[p] = true;
    int nullity = cols_ - static_cast<int>(pivots.size());
    Matrix ker(cols_, nullity);
    int k = 0;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      ker.at(free, k) = K(1);
      for (size_t r = 0; r < pivots.size(); ++r)
        ker.at(pivots[r], k) = -m.at(static_cast<int>(r), free);
      ++k;
    }
    return ker;
  }

  K determinant() const {
    if (!is_square()) throw Error(ErrorCode::Internal, "determinant of non-square matrix");
    Matrix m = *this;
    K det(1);
    for (int col = 0; col < cols_; ++col) {
      int p = -1;
      for (int i = col; i < rows_; ++i)
        if (!(m.at(i, col) == K(0))) { p = i; break; }
      if (p < 0) return K(0);
      if (p != col) {
        for (int j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(col, j));
        det = -det;
      }
      det = det * m.at(col, col);
      K inv = K(1) / m.at(col, col);
      for (int i = col + 1; i < rows_; ++i) {
        if (m.at(i, col) == K(0)) continue;
        K f = m.at(i, col) * inv;
        for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
      }
    }
    return det;
  }

  // Solves this * x = rhs (rhs may have several columns); throws if the
  // system is singular or inconsistent.
  Matrix solve(const Matrix& rhs) const {
    if (!is_square() || rhs.rows_ != rows_)
      throw Error(ErrorCode::Internal, "solve shape mismatch");
    Matrix aug = hcat(*this, rhs);
    std::vector<int> pivots = aug.row_reduce();
    if (static_cast<int>(pivots.size()) != cols_ ||
        (!pivots.empty() && pivots.back() >= cols_))
      throw Error(ErrorCode::Internal, "singular linear system");
    return aug.submatrix(0, cols_, rows_, rhs.cols_);
  }

  Matrix inverse() const { return solve(identity(rows_)); }

  Matrix power(int e) const {
    Matrix r = identity(rows_);
    Matrix base = *this;
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
  }

  K trace() const {
    K t(0);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (int i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (int j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m.at(i, j);
    }
    return os << "]";
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorCode::Internal, "matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<K> data_;
};

// Monic characteristic polynomial det(lambda I - m), by evaluating the
// determinant at dim+1 rational points and interpolating.
template <typename K>
UPoly<K> char_poly(const Matrix<K>& m) {
  if (!m.is_square()) throw Error(ErrorCode::Internal, "char_poly of non-square matrix");
  int n = m.rows();
  if (n == 0) return UPoly<K>::constant(K(1));
  std::vector<K> xs, ys;
  for (int t = 0; t <= n; ++t) {
    K x(static_cast<long>(t));
    Matrix<K> shifted = Matrix<K>::identity(n).scaled(x) - m;
    xs.push_back(x);
    ys.push_back(shifted.determinant());
  }
  // Lagrange interpolation over K.
  UPoly<K> acc;
  for (int i = 0; i <= n; ++i) {
    UPoly<K> li = UPoly<K>::constant(K(1));
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      UPoly<K> lin(std::vector<K>{-xs[j], K(1)});
      li = li * lin.scaled(K(1) / (xs[i] - xs[j]));
    }
    acc = acc + li.scaled(ys[i]);
  }
  return acc;
}

}  // namespace vancyc

#endif  // VANCYC_MATRIX_HPP
