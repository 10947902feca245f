#pragma once
// Quadratic boundary barriers on ellipsoidal domains, the glue constants
// (beta, bhat, sbar, shat, c_star, alpha(c)), the piecewise candidate built
// from the barrier envelope near the boundary and the far-field profile
// branch, and the numerical subsolution/supersolution sandwich check.

#include <optional>
#include <span>
#include <vector>

#include "hexsub/verification.hpp"

namespace hexsub {

// D = { x : (1/2) x^T B x < r }, strictly convex with a smooth boundary.
struct DomainSpec {
  Matrix B;
  double r = 1.0;

  int dim() const { return B.rows(); }
  double level(const Vector& x) const;            // (1/2) x^T B x
  // strict interior, with a relative margin so boundary points computed to
  // rounding never count as inside
  bool contains(const Vector& x) const { return level(x) < r * (1.0 - 1e-12); }
  Vector boundary_point(const Vector& dir) const; // scaled onto the boundary
  Vector outward_normal(const Vector& x) const;   // unit normal at boundary x
};

// phi(x) = c0 + b.x + (1/2) x^T Q x restricted to the boundary.
struct BoundaryData {
  double c0 = 0.0;
  Vector b;
  Matrix Q;

  double operator()(const Vector& x) const;
  Vector gradient(const Vector& x) const;
};

// w_xi(x) = phi(xi) + (1/2)[(x - xbar)^T A (x - xbar) - (xi - xbar)^T A (xi - xbar)]
struct Barrier {
  Vector xi;
  Vector xbar;
  Matrix A;
  double phi_at_xi = 0.0;
  double margin = 0.0;  // min (phi - w_xi)/|x - xi|^2 over boundary samples

  double value(const Vector& x) const;
};

// Vertex search along xbar(t) = xi - A^{-1}(grad phi(xi) + t nu), doubling t
// until w_xi < phi holds at every boundary sample with margin proportional
// to |x - xi|^2. The A^{-1} warp makes the linear term t (x - xi).nu, which
// strict convexity bounds by -c t |x - xi|^2; a step along the bare normal
// has the wrong sign somewhere whenever A and the domain are not aligned.
// The HEXSUB_MAX_T environment variable caps t.
Barrier build_barrier(const DomainSpec& dom, const BoundaryData& phi, const CandidateMatrix& A,
                      const Vector& xi, int samples);

double lower_envelope(std::span<const Barrier> barriers, const Vector& x);

// mu_sbar(c2) = int_sbar^inf (w_{c2,delta} - 1) dt + beta - sbar
double mu_sbar(const GContext& ctx, double c2, double delta, double sbar, double beta,
               double s_max = 1e6);

struct GlueConfig {
  double sbar = 0.0;
  double shat = 0.0;
  double beta = 0.0;
  double bhat = 0.0;
  double c_star = 0.0;
  double c = 0.0;
  double alpha_c = 0.0;  // the c2 with mu_sbar(c2) = c
  double delta = 0.0;
  double chat = 0.0;
  double s_max = 1e6;
};

// Monotone bisection of mu_sbar to absolute tolerance 1e-10; requires
// c > c_star.
double alpha_of_c(const GContext& ctx, double c, const GlueConfig& cfg);

struct Glue {
  GlueConfig cfg;
  std::vector<Barrier> barriers;
  UProfile profile;  // c2 = alpha(c), extended below s = 1 when D dips below E(1)
  DomainSpec dom;
  BoundaryData phi;
  GContext ctx;
  double u_at_sbar = 0.0;

  double level(const Vector& x) const;  // (1/2) x^T A x
  double omega(const Vector& x) const;  // profile branch
  double value(const Vector& x) const;  // piecewise glue; undefined inside D
  double upper(const Vector& x) const;  // supersolution (1/2) x^T A x + c
};

struct GlueOptions {
  int barrier_count = 128;
  int boundary_samples = 256;
  int cloud_size = 4096;
  double chat_init = 2.0;
  double s_grid_ratio = 2.0;
  double s_max = 1e6;
  int level_samples = 64;
};

// c empty picks c_star + 1 once the glue constants are known.
Glue build_glue(const GContext& ctx, const DomainSpec& dom, const BoundaryData& phi,
                double delta, std::optional<double> c, const GlueOptions& opt = {});

struct SandwichReport {
  int violations = 0;           // glue > upper + 1e-9
  double worst_violation = 0.0; // most positive glue - upper
  double boundary_gap = 0.0;    // sup over boundary samples of phi - glue
  double anchor_gap = 0.0;      // worst |glue - phi| at barrier anchors
  double far_field_worst = 0.0; // max |glue - upper| / (10 s^{1 - alpha})
  double interface_jump = 0.0;  // worst jump across the two glue interfaces
  int omega_beta_violations = 0;
  int samples = 0;
  bool pass = false;
};
SandwichReport sandwich_check(const Glue& glue, int samples_per_region = 1024);

}  // namespace hexsub
