#pragma once
// Numerical certification that a built profile is a subsolution beyond a
// threshold s_bar: residuals f(lambda(D^2 u)) - 1 on sampled level sets,
// the gap against the delta-shifted comparison point the ODE was built
// from, eigenvalue-bound bookkeeping, and far-field boundedness of u
// against its quadratic.

#include <span>
#include <string>
#include <vector>

#include "hexsub/sampling.hpp"
#include "hexsub/subsolution.hpp"

namespace hexsub {

struct VerificationReport {
  double sbar_found = 0.0;
  double min_residual = 0.0;       // min of f(lambda(D^2 u)) - 1 for s > sbar
  double comparison_min_gap = 0.0; // min gap against the comparison point
  int eigen_bound_violations = 0;
  double asymptotic_sup = 0.0;     // sup of |x|^{2 alpha - 2} |u - Q|
  int samples_used = 0;
  bool certified = false;
  std::string detail;
};

// min over sampled x on the level set {(1/2) x^T A x = s} of
//   f(lambda(D^2 u)) - f(a_1 w + (2 a_n + delta) s w', a_2 w, ..., a_n w).
// Requires delta > 0 unless a is constant or the gradient argmax is strict.
// A sample whose Hessian eigenvalues leave the cone counts as -inf.
double comparison_gap(const GContext& ctx, const UProfile& profile, double s, int samples);

// Smallest grid value beyond which the gap stays >= -1e-10 and the residual
// f(lambda(D^2 u)) >= 1 - 1e-8 at every tested larger grid value. Throws
// when no grid point certifies. Stores the result into profile.sbar.
double find_sbar(const GContext& ctx, UProfile& profile, std::span<const double> s_grid,
                 int samples);

// max over radii R and sampled directions of R^{2 alpha - 2} |u(s(x)) -
// ((1/2) x^T A x + c)|; the per-radius maxima must not grow by more than 1%
// per dyadic step.
double asymptotic_check(const GContext& ctx, const UProfile& profile, double c,
                        std::span<const double> radii);

struct VerifyOptions {
  double s_grid_lo = 1.0;
  double s_grid_ratio = 2.0;
  int samples = 64;
  std::vector<double> radii;  // default: dyadic within grid coverage
};

VerificationReport verify_profile(const GContext& ctx, UProfile& profile,
                                  const VerifyOptions& opt = {});

// geometric grid {lo, lo*ratio, ...} capped at hi
std::vector<double> geometric_grid(double lo, double hi, double ratio);

}  // namespace hexsub
