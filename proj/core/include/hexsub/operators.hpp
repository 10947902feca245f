#pragma once
// Symmetric operator families acting on Hessian eigenvalues: the k-Hessian
// sigma_k, the Hessian quotient sigma_k/sigma_l, and the special Lagrangian
// operator (1/Theta) sum_i arctan(lambda_i), normalized so the equation of
// interest is always f(lambda) = 1. Each family carries its ellipticity cone
// Gamma_k and the constant a* with f(a*(1,...,1)) = 1.

#include <span>
#include <string>
#include <vector>

#include "hexsub/linalg.hpp"

namespace hexsub {

enum class OperatorKind { SigmaK, Quotient, Lagrangian };

class OperatorSpec {
public:
  // n >= 3 throughout; sigma_k needs 1 <= k <= n, quotients 1 <= l < k <= n,
  // the Lagrangian phase (n-1)*pi/2 <= theta < n*pi/2.
  static OperatorSpec sigma_k(int n, int k);
  static OperatorSpec quotient(int n, int k, int l);
  static OperatorSpec lagrangian(int n, double theta);

  OperatorKind kind() const { return kind_; }
  int dimension() const { return n_; }
  int order_k() const { return k_; }
  int order_l() const { return l_; }
  double theta() const { return theta_; }

  // order of the cone Gamma_k this operator is elliptic on; the Lagrangian
  // uses Gamma_n for odd n and Gamma_{n-1} for even n
  int cone_order() const;
  std::string name() const;

private:
  OperatorSpec(OperatorKind kind, int n, int k, int l, double theta)
      : kind_(kind), n_(n), k_(k), l_(l), theta_(theta) {}

  OperatorKind kind_;
  int n_;
  int k_;
  int l_;
  double theta_;
};

// sigma_j(lam) for j = 0..kmax, expanded one variable at a time (stable for
// any n; never enumerates subsets).
std::vector<double> elementary_symmetric(std::span<const double> lam, int kmax);

// sigma_j of lam with the i-th entry removed, for every i.
std::vector<double> elementary_symmetric_without(std::span<const double> lam, int j);

// f is symmetric, so these accept the eigenvalues in any order.
double eval_f(const OperatorSpec& op, std::span<const double> lam);
double eval_f(const OperatorSpec& op, const Spectrum& lam);

Vector grad_f(const OperatorSpec& op, std::span<const double> lam);
Vector grad_f(const OperatorSpec& op, const Spectrum& lam);

bool in_cone(const OperatorSpec& op, std::span<const double> lam);
bool in_cone(const OperatorSpec& op, const Spectrum& lam);

// Solves f(t*(1,...,1)) = 1 by bracketing bisection (relative tol 1e-12).
double a_star(const OperatorSpec& op);

}  // namespace hexsub
