#include "hexsub/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexsub {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dim(const OperatorSpec& op, std::size_t len) {
  if (static_cast<int>(len) != op.dimension())
    throw std::invalid_argument("operator " + op.name() + ": eigenvalue list has wrong length");
}

}  // namespace

OperatorSpec OperatorSpec::sigma_k(int n, int k) {
  if (n < 3) throw std::invalid_argument("sigma_k: n >= 3 required");
  if (k < 1 || k > n) throw std::invalid_argument("sigma_k: 1 <= k <= n required");
  return OperatorSpec(OperatorKind::SigmaK, n, k, 0, 0.0);
}

OperatorSpec OperatorSpec::quotient(int n, int k, int l) {
  if (n < 3) throw std::invalid_argument("quotient: n >= 3 required");
  if (l < 1 || l >= k || k > n) throw std::invalid_argument("quotient: 1 <= l < k <= n required");
  return OperatorSpec(OperatorKind::Quotient, n, k, l, 0.0);
}

OperatorSpec OperatorSpec::lagrangian(int n, double theta) {
  if (n < 3) throw std::invalid_argument("lagrangian: n >= 3 required");
  if (theta < (n - 1) * kPi / 2.0 || theta >= n * kPi / 2.0)
    throw std::invalid_argument("lagrangian: (n-1)*pi/2 <= theta < n*pi/2 required");
  return OperatorSpec(OperatorKind::Lagrangian, n, 0, 0, theta);
}

int OperatorSpec::cone_order() const {
  switch (kind_) {
    case OperatorKind::SigmaK:
    case OperatorKind::Quotient:
      return k_;
    case OperatorKind::Lagrangian:
      return (n_ % 2 == 1) ? n_ : n_ - 1;
  }
  return n_;
}

std::string OperatorSpec::name() const {
  switch (kind_) {
    case OperatorKind::SigmaK:
      return "sigma_k(n=" + std::to_string(n_) + ",k=" + std::to_string(k_) + ")";
    case OperatorKind::Quotient:
      return "quotient(n=" + std::to_string(n_) + ",k=" + std::to_string(k_) +
             ",l=" + std::to_string(l_) + ")";
    case OperatorKind::Lagrangian:
      return "lagrangian(n=" + std::to_string(n_) + ",theta=" + std::to_string(theta_) + ")";
  }
  return "?";
}

std::vector<double> elementary_symmetric(std::span<const double> lam, int kmax) {
  std::vector<double> e(static_cast<std::size_t>(kmax) + 1, 0.0);
  e[0] = 1.0;
  int seen = 0;
  for (double x : lam) {
    ++seen;
    for (int j = std::min(kmax, seen); j >= 1; --j)
      e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j) - 1];
  }
  return e;
}

std::vector<double> elementary_symmetric_without(std::span<const double> lam, int j) {
  const std::size_t n = lam.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> rest;
  rest.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    rest.clear();
    for (std::size_t m = 0; m < n; ++m)
      if (m != i) rest.push_back(lam[m]);
    out[i] = elementary_symmetric(rest, j)[static_cast<std::size_t>(j)];
  }
  return out;
}

double eval_f(const OperatorSpec& op, std::span<const double> lam) {
  check_dim(op, lam.size());
  switch (op.kind()) {
    case OperatorKind::SigmaK:
      return elementary_symmetric(lam, op.order_k())[static_cast<std::size_t>(op.order_k())];
    case OperatorKind::Quotient: {
      const auto e = elementary_symmetric(lam, op.order_k());
      const double sl = e[static_cast<std::size_t>(op.order_l())];
      if (sl == 0.0)
        throw std::domain_error("quotient operator: sigma_l vanishes (division-degenerate)");
      return e[static_cast<std::size_t>(op.order_k())] / sl;
    }
    case OperatorKind::Lagrangian: {
      double s = 0.0;
      for (double x : lam) s += std::atan(x);
      return s / op.theta();
    }
  }
  throw std::logic_error("eval_f: unknown operator kind");
}

double eval_f(const OperatorSpec& op, const Spectrum& lam) { return eval_f(op, lam.values()); }

Vector grad_f(const OperatorSpec& op, std::span<const double> lam) {
  check_dim(op, lam.size());
  const std::size_t n = lam.size();
  Vector g(n, 0.0);
  switch (op.kind()) {
    case OperatorKind::SigmaK: {
      auto sk1 = elementary_symmetric_without(lam, op.order_k() - 1);
      for (std::size_t i = 0; i < n; ++i) g[i] = sk1[i];
      return g;
    }
    case OperatorKind::Quotient: {
      const auto e = elementary_symmetric(lam, op.order_k());
      const double sk = e[static_cast<std::size_t>(op.order_k())];
      const double sl = e[static_cast<std::size_t>(op.order_l())];
      if (sl == 0.0)
        throw std::domain_error("quotient operator: sigma_l vanishes (division-degenerate)");
      auto dk = elementary_symmetric_without(lam, op.order_k() - 1);
      auto dl = elementary_symmetric_without(lam, op.order_l() - 1);
      for (std::size_t i = 0; i < n; ++i) g[i] = (dk[i] * sl - sk * dl[i]) / (sl * sl);
      return g;
    }
    case OperatorKind::Lagrangian: {
      for (std::size_t i = 0; i < n; ++i) g[i] = 1.0 / (op.theta() * (1.0 + lam[i] * lam[i]));
      return g;
    }
  }
  throw std::logic_error("grad_f: unknown operator kind");
}

Vector grad_f(const OperatorSpec& op, const Spectrum& lam) { return grad_f(op, lam.values()); }

bool in_cone(const OperatorSpec& op, std::span<const double> lam) {
  check_dim(op, lam.size());
  const int k = op.cone_order();
  const auto e = elementary_symmetric(lam, k);
  for (int j = 1; j <= k; ++j)
    if (!(e[static_cast<std::size_t>(j)] > 0.0)) return false;
  return true;
}

bool in_cone(const OperatorSpec& op, const Spectrum& lam) { return in_cone(op, lam.values()); }

double a_star(const OperatorSpec& op) {
  const int n = op.dimension();
  Vector lam(static_cast<std::size_t>(n), 0.0);
  auto level = [&](double t) {
    std::fill(lam.begin(), lam.end(), t);
    return eval_f(op, lam) - 1.0;
  };
  double lo = 1e-8;
  while (level(lo) >= 0.0) {
    lo *= 1e-2;
    if (lo < 1e-300) throw std::runtime_error("a_star: level set reaches the origin");
  }
  double hi = std::max(1.0, static_cast<double>(n));
  if (op.kind() == OperatorKind::Lagrangian)
    hi = std::max(hi, std::tan(op.theta() / n) + 1.0);
  const double cap = 1e12;
  while (level(hi) < 0.0) {
    hi *= 2.0;
    if (hi > cap) throw std::runtime_error("a_star: no bracket found below cap");
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (level(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hexsub
