#pragma once
// Small dense symmetric eigenproblems (cyclic Jacobi), the Hessian of a
// generalized symmetric function u(x) = u(s) with s = (1/2) x^T A x, the
// two-sided eigenvalue bounds that Hessian satisfies when u' > 0, u'' <= 0,
// and Weyl perturbation inequalities used as cross-checks.

#include <vector>

#include "hexsub/linalg.hpp"

namespace hexsub {

struct EigenSystem {
  Spectrum values;
  Matrix vectors;  // column i pairs with values[i]
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
// 1e-12 * ||M||. Input must be symmetric within 1e-10 (relative).
Spectrum eigen_sym(const Matrix& m);
EigenSystem eigen_sym_system(const Matrix& m);

// State of a G-Sym function at one point: diag(A) = a ascending, position x,
// w = u'(s), wp = u''(s); s = (1/2) sum a_i x_i^2 and U = sum a_i^2 x_i^2
// are derived on construction.
struct GSymPoint {
  Spectrum a;
  Vector x;
  double s = 0.0;
  double w = 0.0;
  double wp = 0.0;
  double U = 0.0;

  static GSymPoint make(Spectrum a, Vector x, double w, double wp);
};

// (D^2 u)_ij = a_i delta_ij w + a_i a_j x_i x_j wp
Matrix gsym_hessian(const GSymPoint& p);

// a_i w + U wp <= lambda_i(D^2 u) <= a_i w, valid for w > 0, wp <= 0.
struct EigenBounds {
  Vector lower;
  Vector upper;
};
EigenBounds eigen_bounds(const GSymPoint& p);

// Slacks of the Weyl inequalities
//   lambda_i(A+B) <= lambda_{i+j}(A) + lambda_{n-j}(B),   j = 0..n-i
//   lambda_{i-j+1}(A) + lambda_j(B) <= lambda_i(A+B),     j = 1..i
// (1-based indices as recorded in the entries; slack >= 0 means the
// inequality holds).
struct WeylSlacks {
  struct Entry {
    int i;
    int j;
    double slack;
  };
  std::vector<Entry> upper;
  std::vector<Entry> lower;
  double min_slack() const;
};
WeylSlacks weyl_bounds(const Matrix& a, const Matrix& b);

}  // namespace hexsub
