#include "hexsub/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexsub {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n, 0.0);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()), 0.0);
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : d_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("Matrix sum: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw std::invalid_argument("Matrix-vector product: shape mismatch");
  Vector y(static_cast<std::size_t>(a.rows()), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

Spectrum::Spectrum(Vector values) : v_(std::move(values)) {
  if (v_.empty()) throw std::invalid_argument("Spectrum: empty");
  std::sort(v_.begin(), v_.end());
}

Spectrum Spectrum::from_sorted(Vector values) {
  if (values.empty()) throw std::invalid_argument("Spectrum: empty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw std::invalid_argument("Spectrum::from_sorted: values not ascending");
  Spectrum s;
  s.v_ = std::move(values);
  return s;
}

}  // namespace hexsub
