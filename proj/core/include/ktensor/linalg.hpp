#pragma once

// Small dense matrices over any scalar level. Sizes here never exceed ~10, so
// everything is naive row-major loops.

#include <cmath>
#include <cstddef>
#include <vector>

#include "ktensor/dual.hpp"
#include "ktensor/errors.hpp"

namespace ktensor {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, S(0.0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  const std::vector<S>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> data_;
};

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
  Matrix<S> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const S aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class S>
Matrix<S> operator+(Matrix<S> a, const Matrix<S>& b) { return a += b; }
template <class S>
Matrix<S> operator-(Matrix<S> a, const Matrix<S>& b) { return a -= b; }

template <class S>
std::vector<S> mat_vec(const Matrix<S>& a, const std::vector<S>& x) {
  std::vector<S> y(a.rows(), S(0.0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

// Lower-triangular L with a = L L^T.
template <class S>
Matrix<S> cholesky(const Matrix<S>& a) {
  using std::sqrt;
  const int n = a.rows();
  Matrix<S> l(n, n);
  for (int j = 0; j < n; ++j) {
    S diag = a(j, j);
    for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(value_of(diag) > 0.0)) throw SingularMetricError("metric is not positive definite");
    l(j, j) = sqrt(diag);
    for (int i = j + 1; i < n; ++i) {
      S s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

template <class S>
Matrix<S> lower_inverse(const Matrix<S>& l) {
  const int n = l.rows();
  Matrix<S> inv(n, n);
  for (int j = 0; j < n; ++j) {
    inv(j, j) = S(1.0) / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      S s(0.0);
      for (int k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

// Inverse of a symmetric positive-definite matrix.
template <class S>
Matrix<S> spd_inverse(const Matrix<S>& a) {
  Matrix<S> li = lower_inverse(cholesky(a));
  return li.transpose() * li;
}

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
  S s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline double max_abs(const Matrix<double>& m) {
  double r = 0.0;
  for (double x : m.data()) r = std::fmax(r, std::fabs(x));
  return r;
}

}  // namespace ktensor
