#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recaut/errors.hpp"
#include "recaut/rational.hpp"

namespace recaut {

/// Dense row-major matrix over an exact field (Rational or GaussianRational).
///
/// Vectors are matrices with one column (state vectors) or one row (final
/// functionals). Transitions act by left multiplication: v' = A v.
template <class T>
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix column(std::vector<T> entries) {
    Matrix m;
    m.rows_ = entries.size();
    m.cols_ = 1;
    m.data_ = std::move(entries);
    return m;
  }

  static Matrix row(std::vector<T> entries) {
    Matrix m;
    m.rows_ = 1;
    m.cols_ = entries.size();
    m.data_ = std::move(entries);
    return m;
  }

  /// Basis column vector e_i of length n (0-based i).
  static Matrix unit_column(std::size_t n, std::size_t i) {
    Matrix m(n, 1);
    m(i, 0) = T(1);
    return m;
  }

  static Matrix unit_row(std::size_t n, std::size_t i) {
    Matrix m(1, n);
    m(0, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  /// Entry of a vector regardless of orientation.
  const T& operator[](std::size_t i) const { return data_[i]; }
  T& operator[](std::size_t i) { return data_[i]; }

  std::span<const T> entries() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("matrix product " + a.shape() + " * " + b.shape());
    }
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& lhs = a(i, k);
        if (lhs.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) p(i, j) += lhs * b(k, j);
        }
      }
    }
    return p;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("matrix ") + what + " " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using ComplexMatrix = Matrix<GaussianRational>;

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b;
}

/// Kronecker product; (a (x) b)(c (x) d) = (ac) (x) (bd).
template <class T>
Matrix<T> tensor_product(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

/// Block-diagonal sum.
template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> s(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, a.cols() + j) = b(i, j);
  return s;
}

/// Direct sum of column vectors: (x, y) stacked.
template <class T>
Matrix<T> concat_columns(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.cols() != 1 || y.cols() != 1) throw DimensionError("concat_columns expects column vectors");
  Matrix<T> s(x.rows() + y.rows(), 1);
  for (std::size_t i = 0; i < x.rows(); ++i) s[i] = x[i];
  for (std::size_t i = 0; i < y.rows(); ++i) s[x.rows() + i] = y[i];
  return s;
}

/// Direct sum of row vectors.
template <class T>
Matrix<T> concat_rows(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.rows() != 1 || y.rows() != 1) throw DimensionError("concat_rows expects row vectors");
  Matrix<T> s(1, x.cols() + y.cols());
  for (std::size_t i = 0; i < x.cols(); ++i) s[i] = x[i];
  for (std::size_t i = 0; i < y.cols(); ++i) s[x.cols() + i] = y[i];
  return s;
}

template <class T>
Matrix<T> conj_transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = conj(a(r, c));
  return t;
}

template <class T>
T trace(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("trace of non-square " + a.shape());
  T t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

template <class T>
Matrix<T> matrix_power(Matrix<T> base, unsigned long exponent) {
  if (!base.is_square()) throw DimensionError("power of non-square " + base.shape());
  Matrix<T> result = Matrix<T>::identity(base.rows());
  while (exponent > 0) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// Determinant by Gaussian elimination over the field T.
template <class T>
T determinant(Matrix<T> a) {
  if (!a.is_square()) throw DimensionError("determinant of non-square " + a.shape());
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return T{};
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const T inv = T(1) / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const T factor = a(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

std::vector<Rational> column_sums(const RatMatrix& a);
std::vector<Rational> row_sums(const RatMatrix& a);
bool is_nonnegative(const RatMatrix& a);
/// Nonnegative entries, every column summing to exactly 1.
bool is_column_stochastic(const RatMatrix& a);

/// Coefficients (1, c_1, ..., c_n) of det(xI - a) = x^n + c_1 x^{n-1} + ... + c_n,
/// computed with the Faddeev-LeVerrier recursion.
std::vector<Rational> char_poly(const RatMatrix& a);

/// p(a) for coefficients given highest degree first.
RatMatrix evaluate_polynomial(std::span<const Rational> coeffs, const RatMatrix& a);

}  // namespace recaut
