#pragma once
// Scalar reduction of f(lambda(D^2 u)) = 1 for generalized symmetric u:
// the implicit profile g(w) solving f(g(w), a_2 w, ..., a_n w) = 1, the
// first-order ODE  w' = (g(w) - a_1 w) / ((2 a_n + delta) s)  with
// w(1) = c2, the integrated profile u(s) = int_1^s w + c1, the far-field
// constant mu(c2), and decay-rate estimation. Profiles keep a dense node
// grid with a monotone cubic interpolant between nodes.

#include "hexsub/admissibility.hpp"

namespace hexsub {

struct GContext {
  OperatorSpec op;
  Spectrum a;  // ascending, gradient max at the first entry
  double level_residual = 0.0;
  double grad_dot_a = 0.0;
  double f_hat = 0.0;

  double alpha(double delta) const { return grad_dot_a / ((2.0 * a.max() + delta) * f_hat); }
  double delta_max() const { return grad_dot_a / f_hat - 2.0 * a.max(); }
};

// Requires in_A and the gradient maximum at the smallest eigenvalue.
GContext make_context(const OperatorSpec& op, const AdmissibilityReport& report);
GContext make_context(const OperatorSpec& op, const CandidateMatrix& A,
                      double level_tolerance = kExactLevelTolerance);

// Root of f(g, a_2 w, ..., a_n w) = 1 in g, bracketed inside the cone
// (absolute tolerance 1e-12). Defined for w >= 1; tolerates excursions a
// hair below 1 from trial integrator stages.
double g_of_w(const GContext& ctx, double w);

// g'(w) = - sum_{i>=2} a_i f_i / f_1 evaluated at (g(w), a_2 w, ..., a_n w);
// always negative.
double g_prime(const GContext& ctx, double w);

class WProfile {
public:
  WProfile(GContext ctx, double c2, double delta)
      : ctx_(std::move(ctx)), c2_(c2), delta_(delta) {}

  const GContext& context() const { return ctx_; }
  double c2() const { return c2_; }
  double delta() const { return delta_; }

  int node_count() const { return static_cast<int>(s_.size()); }
  const std::vector<double>& nodes() const { return s_; }
  const std::vector<double>& node_values() const { return w_; }
  const std::vector<double>& node_derivatives() const { return wp_; }
  double s_front() const { return s_.front(); }
  double s_back() const { return s_.back(); }

  double value(double s) const;        // monotone cubic between nodes
  double slope(double s) const;        // interpolant derivative
  double rhs(double s) const;          // exact ODE right-hand side at (s, value(s))
  double integral_w_minus_1(double lo, double hi) const;

  // assembled by integrate_w
  void set_nodes(std::vector<double> s, std::vector<double> w, std::vector<double> wp);

private:
  int find_interval(double s) const;

  GContext ctx_;
  double c2_;
  double delta_;
  std::vector<double> s_, w_, wp_;
  std::vector<double> slope_;  // limited interpolation slopes
};

// Adaptive embedded Runge-Kutta 4(5) with per-step relative tolerance
// rel_tol; enforces w >= 1 (clamping only within 1e-13 of 1). s_min < 1
// extends the profile backward for glue evaluations below the initial
// level surface. Requires level_residual <= 1e-9: off the level set the
// ODE's fixed point sits away from w = 1 and the profile would cross it.
WProfile integrate_w(const GContext& ctx, double c2, double delta, double s_max,
                     double rel_tol = 1e-10, double s_min = 1.0);

struct UProfile {
  WProfile base;
  double c1 = 0.0;
  std::vector<double> u;  // aligned with base nodes
  double mu = 0.0;        // far-field constant of u - s
  double alpha = 0.0;     // prescribed decay exponent alpha_delta
  double sbar = 0.0;      // certification threshold, set by verification

  double value(double s) const;
  double deriv(double s) const { return base.value(s); }
  double second_deriv(double s) const { return base.rhs(s); }
};

// u(s) = int_1^s w(t) dt + c1, integrated in closed form over the dense
// interpolant; u(1) = c1 exactly.
UProfile build_u(const WProfile& profile, double c1);

// mu(c2) = int_1^inf (w - 1) dt - 1, with the truncated tail added
// analytically from a power-law fit over the last grid decade. s_max is
// auto-extended until the tail estimate is self-consistent against a 4x
// earlier truncation.
double mu(const GContext& ctx, double c2, double delta, double s_max);

// Least-squares slope of log(w-1) against log s over the last two decades;
// returns the decay exponent (positive). Grid must reach s >= 1e5.
double decay_exponent_fit(const WProfile& profile);

// dw/dc2 at s, integrating the variational equation
//   z' = (g'(w) - a_1) z / ((2 a_n + delta) s), z(1) = 1
// along the stored profile; always in (0, 1].
double dw_dc2(const WProfile& profile, double s);
double dw_dc2(const GContext& ctx, double c2, double delta, double s);

struct PowerLawFit {
  double amplitude = 0.0;  // w - 1 ~ amplitude * s^{-exponent}
  double exponent = 0.0;
};
PowerLawFit fit_tail(const WProfile& profile, double s_lo, double s_hi);

}  // namespace hexsub
