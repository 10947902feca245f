#include "hexsub/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexsub/rootfind.hpp"

namespace hexsub {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Solves f(t, rest...) = 1 for the smallest diagonal entry. Used by the
// exact-mode families; the bracket spans (cone floor, generous cap].
double solve_first_entry(const OperatorSpec& op, const Vector& rest) {
  Vector lam(rest.size() + 1, 0.0);
  for (std::size_t i = 0; i < rest.size(); ++i) lam[i + 1] = rest[i];
  auto level = [&](double t) {
    lam[0] = t;
    if (!in_cone(op, lam)) return -1.0;
    return eval_f(op, lam) - 1.0;
  };
  double sum_rest = 0.0;
  for (double r : rest) sum_rest += r;
  double lo = -sum_rest + 1e-12 * (1.0 + sum_rest);
  double hi = *std::max_element(rest.begin(), rest.end());
  while (level(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("example_family: no level-set entry found");
  }
  if (level(lo) >= 0.0) throw std::runtime_error("example_family: degenerate bracket");
  return bisect_secant(level, lo, hi, 1e-14);
}

}  // namespace

CandidateMatrix CandidateMatrix::diagonal(Vector d) {
  if (d.empty()) throw std::invalid_argument("CandidateMatrix: empty diagonal");
  return CandidateMatrix(Matrix::diagonal(d), true);
}

CandidateMatrix CandidateMatrix::full(Matrix m) {
  if (!m.square()) throw std::invalid_argument("CandidateMatrix: matrix must be square");
  const double scale = std::max(1.0, m.frobenius_norm());
  if (m.max_asymmetry() > 1e-12 * scale)
    throw std::invalid_argument("CandidateMatrix: matrix is not symmetric");
  bool diag = true;
  for (int i = 0; i < m.rows() && diag; ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0.0) {
        diag = false;
        break;
      }
  return CandidateMatrix(std::move(m), diag);
}

Spectrum CandidateMatrix::eigenvalues() const {
  if (diagonal_) {
    Vector d(static_cast<std::size_t>(m_.rows()));
    for (int i = 0; i < m_.rows(); ++i) d[static_cast<std::size_t>(i)] = m_(i, i);
    return Spectrum(std::move(d));
  }
  return eigen_sym(m_);
}

AdmissibilityReport analyze(const OperatorSpec& op, const CandidateMatrix& A,
                            double level_tolerance) {
  if (A.dim() != op.dimension())
    throw std::invalid_argument("analyze: matrix dimension does not match operator");
  AdmissibilityReport r;
  r.a = A.eigenvalues();
  const int n = r.a.size();

  if (!(r.a.min() > 0.0)) {
    r.in_A = false;
    r.reason = "matrix is not positive definite";
    r.f_at_a = std::numeric_limits<double>::quiet_NaN();
    r.level_residual = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  // positive definite matrices always sit inside Gamma_k; anything else is a
  // broken operator definition
  if (!in_cone(op, r.a))
    throw std::runtime_error("analyze: eigenvalues escape the operator cone");

  r.f_at_a = eval_f(op, r.a);
  r.grad_at_a = grad_f(op, r.a);
  r.a_hat = r.a.max();
  r.grad_argmax_index = 1;
  r.f_hat = r.grad_at_a[0];
  for (int i = 1; i < n; ++i) {
    if (r.grad_at_a[static_cast<std::size_t>(i)] > r.f_hat) {
      r.f_hat = r.grad_at_a[static_cast<std::size_t>(i)];
      r.grad_argmax_index = i + 1;
    }
  }
  const double grad_dot_a = dot(r.grad_at_a, r.a.values());
  r.ratio = grad_dot_a / (2.0 * r.a_hat * r.f_hat);
  r.delta_max = grad_dot_a / r.f_hat - 2.0 * r.a_hat;
  r.level_residual = std::abs(r.f_at_a - 1.0);

  if (r.level_residual > level_tolerance) {
    r.in_A = false;
    r.reason = "f(a) misses the level set";
  } else if (!(r.ratio > 1.0)) {
    r.in_A = false;
    r.reason = "ratio criterion fails";
  } else {
    r.in_A = true;
  }
  return r;
}

double alpha_delta(const AdmissibilityReport& report, double delta) {
  if (delta < 0.0) throw std::domain_error("alpha_delta: delta must be >= 0");
  const double grad_dot_a = dot(report.grad_at_a, report.a.values());
  return grad_dot_a / ((2.0 * report.a_hat + delta) * report.f_hat);
}

OperatorSpec family_operator(Family f) {
  switch (f) {
    case Family::H:
      return OperatorSpec::sigma_k(3, 2);
    case Family::M:
      return OperatorSpec::sigma_k(3, 3);
    case Family::Q:
      return OperatorSpec::quotient(3, 3, 2);
    case Family::L:
      return OperatorSpec::lagrangian(3, kPi);
  }
  throw std::logic_error("family_operator: unknown family");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::H:
      return "H";
    case Family::M:
      return "M";
    case Family::Q:
      return "Q";
    case Family::L:
      return "L";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "H") return Family::H;
  if (name == "M") return Family::M;
  if (name == "Q") return Family::Q;
  if (name == "L") return Family::L;
  return std::nullopt;
}

CandidateMatrix example_family(Family f, double eps, FamilyMode mode) {
  if (eps < 0.0) throw std::invalid_argument("example_family: eps must be >= 0");
  const double r3 = std::sqrt(1.0 / 3.0);
  Vector d(3, 0.0);
  switch (f) {
    case Family::H: {
      d[1] = r3;
      d[2] = r3 + eps;
      d[0] = (mode == FamilyMode::Paper) ? r3 - 2.0 * eps / (2.0 + std::sqrt(3.0) * eps)
                                         : solve_first_entry(family_operator(f), {d[1], d[2]});
      break;
    }
    case Family::M: {
      d[1] = 1.0;
      d[2] = 1.0 + eps;
      d[0] = (mode == FamilyMode::Paper) ? 1.0 - eps / (1.0 + eps)
                                         : solve_first_entry(family_operator(f), {d[1], d[2]});
      break;
    }
    case Family::Q: {
      d[1] = 3.0;
      d[2] = 3.0 + eps;
      d[0] = (mode == FamilyMode::Paper) ? 3.0 - 2.0 * eps / (2.0 * eps + 3.0)
                                         : solve_first_entry(family_operator(f), {d[1], d[2]});
      break;
    }
    case Family::L: {
      d[0] = std::tan(kPi / 3.0 - eps);
      d[1] = std::tan(kPi / 3.0);
      d[2] = std::tan(kPi / 3.0 + eps);
      if (kPi / 3.0 + eps >= kPi / 2.0)
        throw std::invalid_argument("example_family: L entries blow up at eps = pi/6");
      break;
    }
  }
  if (!(d[0] > 0.0))
    throw std::invalid_argument("example_family: eps produces a non-positive first entry");
  return CandidateMatrix::diagonal(d);
}

double family_alpha_delta(const OperatorSpec& op, const Spectrum& a, double delta) {
  const int n = a.size();
  const double an = a.max();
  switch (op.kind()) {
    case OperatorKind::SigmaK: {
      const int k = op.order_k();
      const double sk = elementary_symmetric(a.values(), k)[static_cast<std::size_t>(k)];
      const double sk1_1 = elementary_symmetric_without(a.values(), k - 1)[0];
      return k * sk / ((2.0 * an + delta) * sk1_1);
    }
    case OperatorKind::Quotient: {
      const int k = op.order_k();
      const int l = op.order_l();
      const double sl = elementary_symmetric(a.values(), l)[static_cast<std::size_t>(l)];
      const auto dk = elementary_symmetric_without(a.values(), k - 1);
      const auto dl = elementary_symmetric_without(a.values(), l - 1);
      double h = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i)
        h = std::max(h, dk[static_cast<std::size_t>(i)] - dl[static_cast<std::size_t>(i)]);
      return (k - l) * sl / ((2.0 * an + delta) * h);
    }
    case OperatorKind::Lagrangian: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += a[i] / (1.0 + a[i] * a[i]);
      return (1.0 + a.min() * a.min()) * s / (2.0 * an + delta);
    }
  }
  throw std::logic_error("family_alpha_delta: unknown operator kind");
}

double family_ratio(const OperatorSpec& op, const Spectrum& a) {
  return family_alpha_delta(op, a, 0.0);
}

double default_delta(const OperatorSpec& op) {
  return op.kind() == OperatorKind::Lagrangian ? 0.001 : 0.1;
}

std::optional<double> threshold_epsilon(Family f, FamilyMode mode) {
  const OperatorSpec op = family_operator(f);
  auto admissible = [&](double eps) {
    CandidateMatrix m = example_family(f, eps, mode);
    const Spectrum a = m.eigenvalues();
    if (!(a.min() > 0.0)) return false;
    return family_ratio(op, a) > 1.0;
  };
  // L entries blow up as eps approaches pi/6; everyone else scans to 2
  const double eps_hi = (f == Family::L) ? 0.5 : 2.0;
  if (!admissible(0.0))
    throw std::runtime_error("threshold_epsilon: family not admissible at eps = 0");
  const double step = eps_hi / 200.0;
  double lo = 0.0;
  double hi = -1.0;
  for (double e = step; e <= eps_hi + 1e-15; e += step) {
    bool ok = false;
    try {
      ok = admissible(e);
    } catch (const std::invalid_argument&) {
      ok = false;  // entries left the positive cone; counts as failing
    }
    if (ok) {
      lo = e;
    } else {
      hi = e;
      break;
    }
  }
  if (hi < 0.0) return std::nullopt;  // criterion holds on the whole interval
  auto neg_pred = [&](double e) {
    try {
      return admissible(e) ? -1.0 : 1.0;
    } catch (const std::invalid_argument&) {
      return 1.0;
    }
  };
  return bisect_secant(neg_pred, lo, hi, 1e-8);
}

}  // namespace hexsub
