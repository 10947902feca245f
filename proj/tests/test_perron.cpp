#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hexsub/perron.hpp"

using namespace hexsub;

namespace {

GContext monge_ampere() {
  return make_context(OperatorSpec::sigma_k(3, 3), CandidateMatrix::diagonal({1.0, 1.0, 1.0}));
}

DomainSpec unit_ball() { return DomainSpec{Matrix::identity(3), 0.5}; }

BoundaryData zero_data() { return BoundaryData{0.0, Vector(3, 0.0), Matrix(3, 3, 0.0)}; }

GlueOptions fast_options() {
  GlueOptions opt;
  opt.barrier_count = 64;
  opt.boundary_samples = 128;
  opt.cloud_size = 1024;
  return opt;
}

}  // namespace

TEST_CASE("build_barrier on the unit ball with flat data") {
  const DomainSpec dom = unit_ball();
  const BoundaryData phi = zero_data();
  const CandidateMatrix A = CandidateMatrix::diagonal({1.0, 1.0, 1.0});
  const Vector xi{1.0, 0.0, 0.0};
  const Barrier b = build_barrier(dom, phi, A, xi, 128);

  // exact agreement at its own anchor
  CHECK(b.value(xi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b.margin > 0.0);
  // the vertex sits on the anchor ray, pulled inside
  CHECK(b.xbar[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.xbar[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.xbar[0] < 1.0);
  // strictly below the data at other boundary points
  DirectionSampler ds(3, 99);
  for (int j = 0; j < 200; ++j) {
    const Vector x = dom.boundary_point(ds.next());
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) d2 += (x[static_cast<std::size_t>(i)] - xi[static_cast<std::size_t>(i)]) *
                                      (x[static_cast<std::size_t>(i)] - xi[static_cast<std::size_t>(i)]);
    if (d2 < 1e-12) continue;
    CHECK(b.value(x) < 0.0);
  }
  // the barrier's quadratic solves the equation: f(lambda(A)) = 1
  CHECK(eval_f(OperatorSpec::sigma_k(3, 3), A.eigenvalues()) == doctest::Approx(1.0));
}

TEST_CASE("build_barrier succeeds off the eigenvector rays of an anisotropic A") {
  const DomainSpec dom = unit_ball();
  const BoundaryData phi = zero_data();
  const CandidateMatrix A = example_family(Family::H, 0.0874, FamilyMode::Paper);
  const Vector dir{1.0, 1.0, 1.0};
  const Barrier b = build_barrier(dom, phi, A, dom.boundary_point(dir), 128);
  CHECK(b.margin > 0.0);
}

TEST_CASE("build_barrier input validation") {
  CHECK_THROWS_AS(
      build_barrier(unit_ball(), zero_data(), CandidateMatrix::diagonal({1.0, 1.0, 1.0}),
                    Vector{0.5, 0.0, 0.0}, 64),
      std::invalid_argument);  // not on the boundary
}

TEST_CASE("lower_envelope: single barrier, anchors, and a brute-force oracle") {
  const DomainSpec dom = unit_ball();
  const BoundaryData phi = zero_data();
  const CandidateMatrix A = CandidateMatrix::diagonal({1.0, 1.0, 1.0});

  std::vector<Barrier> barriers;
  DirectionSampler ds(3, 7);
  for (int j = 0; j < 128; ++j)
    barriers.push_back(build_barrier(dom, phi, A, dom.boundary_point(ds.next()), 128));

  const Barrier& first = barriers.front();
  CHECK(lower_envelope({&first, 1}, first.xi) == doctest::Approx(first.value(first.xi)));

  // every anchor value is the data value (its own barrier attains the max)
  for (const Barrier& b : barriers)
    CHECK(lower_envelope(barriers, b.xi) == doctest::Approx(phi(b.xi)).epsilon(1e-12));

  // independent evaluation of the ball formula:
  // w_j(x) = (1/2)|x - xi_j|^2 + t_j (x - xi_j).xi_j with t_j = |xi_j - xbar_j|
  const Vector x{2.0, 0.0, 0.0};
  double oracle = -std::numeric_limits<double>::infinity();
  for (const Barrier& b : barriers) {
    double t = 0.0, quad = 0.0, lin = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double dxi = b.xi[static_cast<std::size_t>(i)] - b.xbar[static_cast<std::size_t>(i)];
      t += dxi * dxi;
      const double y = x[static_cast<std::size_t>(i)] - b.xi[static_cast<std::size_t>(i)];
      quad += y * y;
      lin += y * b.xi[static_cast<std::size_t>(i)];
    }
    oracle = std::max(oracle, 0.5 * quad + std::sqrt(t) * lin);
  }
  CHECK(lower_envelope(barriers, x) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("mu_sbar: flat value, additivity, monotonicity") {
  const GContext ma = monge_ampere();
  const double sbar = 2.0, beta = -0.25;
  CHECK(mu_sbar(ma, 1.0, 0.0, sbar, beta) == doctest::Approx(beta - sbar));

  double prev = beta - sbar;
  for (double c2 : {1.5, 2.0, 4.0}) {
    const double v = mu_sbar(ma, c2, 0.0, sbar, beta);
    CHECK(v > prev);
    prev = v;
    // additive split against mu over [1, inf)
    const WProfile prof = integrate_w(ma, c2, 0.0, 1e6);
    const double head = prof.integral_w_minus_1(1.0, sbar);
    const double whole = mu(ma, c2, 0.0, 1e6);
    CHECK(v == doctest::Approx(whole + 1.0 - head + beta - sbar).epsilon(1e-9));
  }
}

TEST_CASE("alpha_of_c: inversion round trip and monotonicity") {
  const GContext ma = monge_ampere();
  GlueConfig cfg;
  cfg.sbar = 2.0;
  cfg.beta = -0.25;
  cfg.delta = 0.0;
  cfg.c_star = mu_sbar(ma, 1.2, 0.0, cfg.sbar, cfg.beta);
  cfg.s_max = 1e6;

  double prev = 1.0;
  for (double c2 : {1.5, 2.0, 4.0}) {
    const double c = mu_sbar(ma, c2, 0.0, cfg.sbar, cfg.beta);
    const double back = alpha_of_c(ma, c, cfg);
    CHECK(std::abs(back - c2) < 1e-8);
    CHECK(back > prev);
    prev = back;
  }
  CHECK_THROWS_AS(alpha_of_c(ma, cfg.c_star - 1.0, cfg), std::invalid_argument);
}

TEST_CASE("glue: end-to-end on the unit ball") {
  const GContext ma = monge_ampere();
  const Glue glue = build_glue(ma, unit_ball(), zero_data(), 0.0, std::nullopt, fast_options());

  CHECK(glue.cfg.beta <= glue.cfg.bhat);
  CHECK(glue.cfg.c_star > glue.cfg.bhat);
  CHECK(glue.cfg.c == doctest::Approx(glue.cfg.c_star + 1.0));
  CHECK(glue.cfg.alpha_c > 1.0);
  CHECK(glue.cfg.shat > glue.cfg.sbar);
  // mu_sbar(alpha_c) = c by construction
  CHECK(mu_sbar(ma, glue.cfg.alpha_c, 0.0, glue.cfg.sbar, glue.cfg.beta) ==
        doctest::Approx(glue.cfg.c).epsilon(1e-7));

  // boundary values equal the data at anchors
  for (const Barrier& b : glue.barriers)
    CHECK(glue.value(b.xi) == doctest::Approx(0.0).epsilon(1e-12));

  // far field: |glue - (s + c)| <= 10 s^{1 - alpha}
  DirectionSampler ds(3, 3);
  for (double s = glue.cfg.shat; s <= 1e6; s *= 8.0) {
    const Vector x = level_set_point(ma.a, s, ds.next());
    CHECK(std::abs(glue.value(x) - (s + glue.cfg.c)) <= 10.0 * std::pow(s, 1.0 - glue.profile.alpha));
  }

  CHECK_THROWS_AS(glue.value(Vector{0.1, 0.0, 0.0}), std::invalid_argument);

  const SandwichReport rep = sandwich_check(glue, 512);
  CHECK(rep.pass);
  CHECK(rep.violations == 0);
  CHECK(rep.omega_beta_violations == 0);
  CHECK(rep.far_field_worst <= 1.0);
  CHECK(rep.anchor_gap < 1e-12);
  CHECK(rep.boundary_gap >= -1e-12);
}

TEST_CASE("glue: raising c raises the outer branch by the same amount") {
  const GContext ma = monge_ampere();
  const GlueOptions opt = fast_options();
  const Glue g1 = build_glue(ma, unit_ball(), zero_data(), 0.0, std::nullopt, opt);
  const double dc = 0.5;
  const Glue g2 = build_glue(ma, unit_ball(), zero_data(), 0.0, g1.cfg.c + dc, opt);
  DirectionSampler ds(3, 21);
  const Vector x = level_set_point(ma.a, 1e5, ds.next());
  const double tail_tol = 20.0 * std::pow(1e5, 1.0 - g1.profile.alpha);
  CHECK(std::abs((g2.value(x) - g1.value(x)) - dc) <= tail_tol);
}
