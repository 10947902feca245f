#pragma once

#include <span>
#include <vector>

namespace hexsub {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

// Dense row-major matrix. Everything here is sized for small spectral
// problems (n up to ~16), so no blocking or views.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  static Matrix identity(int n);
  static Matrix diagonal(const Vector& d);

  double& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double frobenius_norm() const;
  double max_asymmetry() const;  // max |a_ij - a_ji| over i < j
  Matrix transposed() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> d_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

// Eigenvalue list of a symmetric matrix, kept ascending.
class Spectrum {
public:
  Spectrum() = default;
  explicit Spectrum(Vector values);            // sorts ascending
  static Spectrum from_sorted(Vector values);  // validates the order instead

  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  double min() const { return v_.front(); }
  double max() const { return v_.back(); }
  const Vector& values() const { return v_; }

private:
  Vector v_;
};

}  // namespace hexsub
