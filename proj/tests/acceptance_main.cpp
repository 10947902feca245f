// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance and runtime budget. Returns the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hexsub/examples_table.hpp"
#include "hexsub/perron.hpp"
#include "test_util.hpp"

using namespace hexsub;
using testutil::Rng;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

class Criterion {
public:
  explicit Criterion(std::string name)
      : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      detail_ += (detail_.empty() ? "" : "; ") + what;
    }
  }
  void check_close(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: got %.10g want %.10g (tol %.1e)", what.c_str(), got,
                  want, tol);
    check(std::abs(got - want) <= tol, buf);
  }
  void finish(double budget_seconds) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (secs > budget_seconds) {
      pass_ = false;
      detail_ += (detail_.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] %s (%.2fs)%s%s\n", pass_ ? "PASS" : "FAIL", name_.c_str(), secs,
                detail_.empty() ? "" : " -- ", detail_.c_str());
    if (!pass_) ++g_failures;
  }

private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
  bool pass_ = true;
  std::string detail_;
};

GContext family_context(Family f, FamilyMode mode) {
  const double eps = (f == Family::H) ? 0.0874 : (f == Family::L) ? 0.035 : 0.1;
  return make_context(family_operator(f), example_family(f, eps, mode));
}

double family_table_delta(Family f) { return f == Family::L ? 0.001 : 0.1; }

GContext monge_ampere() {
  return make_context(OperatorSpec::sigma_k(3, 3), CandidateMatrix::diagonal({1.0, 1.0, 1.0}));
}

void criterion_a_star() {
  Criterion c("1. closed-form a*: sigma_2, quotient, Lagrangian");
  c.check_close(a_star(OperatorSpec::sigma_k(3, 2)), 1.0 / std::sqrt(3.0), 1e-10, "sigma_2(3)");
  c.check_close(a_star(OperatorSpec::quotient(3, 3, 2)), 3.0, 1e-10, "sigma_3/sigma_2(3)");
  c.check_close(a_star(OperatorSpec::lagrangian(3, kPi)), std::sqrt(3.0), 1e-10,
                "lagrangian(pi)");
  c.finish(1.0);
}

void criterion_example_exponents() {
  Criterion c("2. example exponent table (H, M, Q, L)");
  const auto rows = reproduce_examples();
  c.check(rows.size() == 4, "four rows");
  for (const auto& r : rows) {
    if (r.family == "H") {
      c.check_close(r.two_alpha_minus_2, 0.2528, 1e-3, "H two-alpha");
      c.check_close(r.comparison.value_or(-1), 0.8024, 1e-3, "H comparison");
    } else if (r.family == "M") {
      c.check_close(r.two_alpha_minus_2, 0.3715, 1e-3, "M two-alpha");
      c.check_close(r.comparison.value_or(-1), 1.0, 1e-12, "M contrast n-2");
    } else if (r.family == "Q") {
      c.check_close(r.two_alpha_minus_2, 0.7102, 2e-2, "Q two-alpha (published matrix)");
      c.check_close(r.comparison.value_or(-1), 0.8956, 1e-3, "Q theta(3,2)");
      c.check(!r.note.empty(), "Q level-set discrepancy documented");
    } else if (r.family == "L") {
      c.check_close(r.two_alpha_minus_2, 0.4537, 1e-2, "L two-alpha");
    }
  }
  c.finish(5.0);
}

void criterion_thresholds() {
  Criterion c("3. family admissibility thresholds");
  const auto h = threshold_epsilon(Family::H, FamilyMode::Paper);
  c.check(h.has_value(), "H threshold exists");
  if (h) c.check_close(*h, (-3.0 * std::sqrt(3.0) + std::sqrt(39.0)) / 6.0, 1e-6, "H threshold");
  const auto m = threshold_epsilon(Family::M, FamilyMode::Paper);
  c.check(m.has_value(), "M threshold exists");
  if (m) c.check_close(*m, (std::sqrt(6.0) - 2.0) / 2.0, 1e-6, "M threshold");
  const auto l = threshold_epsilon(Family::L, FamilyMode::Paper);
  c.check(l.has_value(), "L threshold exists");
  if (l) c.check_close(*l, 0.071, 1e-3, "L threshold");

  // both Q readings reported; the published (3 sqrt(3) - 3)/4 ~ 0.549 is
  // reproduced by neither and stays flagged unverified
  const auto q_exact = threshold_epsilon(Family::Q, FamilyMode::Exact);
  const auto q_paper = threshold_epsilon(Family::Q, FamilyMode::Paper);
  c.check(q_exact.has_value() && q_paper.has_value(), "Q thresholds exist in both modes");
  if (q_exact && q_paper) {
    std::printf("       Q threshold: exact mode %.6f, paper mode %.6f, published 0.549038 "
                "(unverified by either reading)\n",
                *q_exact, *q_paper);
    c.check_close(*q_exact, 0.478, 1e-3, "Q exact-mode threshold near 0.478");
    c.check_close(*q_paper, 0.52, 1e-2, "Q paper-mode threshold near 0.52");
    const double published = (3.0 * std::sqrt(3.0) - 3.0) / 4.0;
    c.check(std::abs(*q_exact - published) > 1e-2 && std::abs(*q_paper - published) > 1e-2,
            "published Q threshold not reproduced");
  }
  c.finish(30.0);
}

void criterion_radial_oracle() {
  Criterion c("4. radial oracle: Monge-Ampere profile, decay rate, residual");
  const GContext ma = monge_ampere();
  const WProfile p = integrate_w(ma, 2.0, 0.0, 1e6);
  auto exact = [](double s) { return std::cbrt(1.0 + 7.0 * std::pow(s, -1.5)); };
  double worst = 0.0;
  for (double s : p.nodes()) worst = std::max(worst, std::abs(p.value(s) - exact(s)));
  for (int i = 0; i <= 60000; ++i) {
    const double s = std::pow(10.0, 6.0 * i / 60000.0);
    worst = std::max(worst, std::abs(p.value(s) - exact(s)));
  }
  char buf[80];
  std::snprintf(buf, sizeof(buf), "uniform profile error %.3e", worst);
  c.check(worst <= 1e-8, buf);

  c.check_close(decay_exponent_fit(p), 1.5, 0.015, "fitted decay exponent");

  UProfile u = build_u(p, 0.0);
  const VerificationReport rep = verify_profile(ma, u);
  c.check(rep.certified, "profile certified");
  c.check(std::abs(rep.min_residual) <= 1e-8, "residual within 1e-8 at all samples");
  c.check(rep.eigen_bound_violations == 0, "no eigenvalue bound violations");
  c.finish(10.0);
}

void property_weyl() {
  Criterion c("5a. Weyl inequality slacks over 200 random pairs");
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const Matrix a = testutil::random_symmetric(rng, n, 2.0);
    const Matrix b = testutil::random_symmetric(rng, n, 2.0);
    worst = std::min(worst, weyl_bounds(a, b).min_slack());
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst slack %.3e", worst);
  c.check(worst >= -1e-10, buf);
  c.finish(30.0);
}

void property_eigen_sandwich() {
  Criterion c("5b. Hessian eigenvalue sandwich over 1000 random points");
  Rng rng(4048);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const GSymPoint p =
        GSymPoint::make(Spectrum(testutil::random_positive(rng, n)),
                        testutil::random_positive(rng, n, -2.0, 2.0), rng.uniform(0.05, 3.0),
                        -rng.uniform(0.0, 1.0));
    const Spectrum lam = eigen_sym(gsym_hessian(p));
    const EigenBounds b = eigen_bounds(p);
    for (int i = 0; i < n; ++i)
      if (lam[i] < b.lower[static_cast<std::size_t>(i)] - 1e-10 ||
          lam[i] > b.upper[static_cast<std::size_t>(i)] + 1e-10)
        ++violations;
  }
  c.check(violations == 0, std::to_string(violations) + " violations");
  c.finish(30.0);
}

void property_g_profile() {
  Criterion c("5c. implicit profile g: monotone, negative slope, closed form");
  const Family fams[] = {Family::H, Family::M, Family::Q, Family::L};
  for (Family f : fams) {
    const GContext ctx = family_context(f, f == Family::Q ? FamilyMode::Exact : FamilyMode::Paper);
    double prev = g_of_w(ctx, 1.0);
    for (int i = 1; i <= 200; ++i) {
      const double w = 1.0 + 19.0 * i / 200.0;
      const double g = g_of_w(ctx, w);
      if (!(g < prev)) c.check(false, family_name(f) + ": g not decreasing");
      prev = g;
      if (!(g_prime(ctx, w) < 0.0)) c.check(false, family_name(f) + ": g' not negative");
    }
    for (double w : {1.5, 4.0, 12.0}) {
      const double h = 1e-5;
      const double fd = (g_of_w(ctx, w + h) - g_of_w(ctx, w - h)) / (2.0 * h);
      if (std::abs(g_prime(ctx, w) - fd) > 1e-6)
        c.check(false, family_name(f) + ": finite-difference mismatch");
    }
    if (ctx.op.kind() == OperatorKind::SigmaK) {
      const int k = ctx.op.order_k();
      for (double w = 1.0; w <= 20.0; w += 0.5) {
        Vector rest;
        for (int i = 1; i < ctx.a.size(); ++i) rest.push_back(ctx.a[i] * w);
        const auto e = elementary_symmetric(rest, k);
        const double oracle =
            (1.0 - e[static_cast<std::size_t>(k)]) / e[static_cast<std::size_t>(k) - 1];
        if (std::abs(g_of_w(ctx, w) - oracle) > 1e-10)
          c.check(false, family_name(f) + ": closed-form mismatch");
      }
    }
  }
  c.finish(30.0);
}

void property_dw_dc2() {
  Criterion c("5d. dw/dc2 in (0,1] with finite-difference agreement");
  const Family fams[] = {Family::H, Family::M, Family::Q, Family::L};
  for (Family f : fams) {
    const GContext ctx = family_context(f, f == Family::Q ? FamilyMode::Exact : FamilyMode::Paper);
    const double delta = family_table_delta(f);
    const WProfile p = integrate_w(ctx, 2.0, delta, 1e6);
    const WProfile ph = integrate_w(ctx, 2.0 + 1e-4, delta, 1e6);
    const WProfile pl = integrate_w(ctx, 2.0 - 1e-4, delta, 1e6);
    for (double s : {10.0, 1e3, 1e6}) {
      const double z = dw_dc2(p, s);
      if (!(z > 0.0 && z <= 1.0)) c.check(false, family_name(f) + ": z outside (0,1]");
      const double fd = (ph.value(s) - pl.value(s)) / 2e-4;
      if (std::abs(z - fd) > 1e-5)
        c.check(false, family_name(f) + ": finite-difference mismatch at s=" + std::to_string(s));
    }
  }
  c.finish(60.0);
}

void property_mu() {
  Criterion c("5e. mu(c2): strict growth and the quadratic lower bound");
  const Family fams[] = {Family::H, Family::M, Family::Q, Family::L};
  for (Family f : fams) {
    const GContext ctx = family_context(f, f == Family::Q ? FamilyMode::Exact : FamilyMode::Paper);
    const double delta = family_table_delta(f);
    double asum = 0.0;
    for (int i = 0; i < ctx.a.size(); ++i) asum += ctx.a[i];
    double prev = -1.0;
    for (double c2 : {1.5, 2.0, 4.0, 8.0}) {
      const double m = mu(ctx, c2, delta, 1e6);
      if (!(m > prev)) c.check(false, family_name(f) + ": mu not increasing");
      prev = m;
      const double lower =
          (2.0 * ctx.a.max() + delta) * (c2 - 1.0) * (c2 - 1.0) / (2.0 * c2 * asum) - 1.0;
      if (!(m >= lower)) c.check(false, family_name(f) + ": lower bound fails");
    }
  }
  c.finish(60.0);
}

void property_decay() {
  Criterion c("5f. decay law: fitted exponent within 2% of alpha_delta");
  const Family fams[] = {Family::H, Family::M, Family::Q, Family::L};
  for (Family f : fams) {
    const GContext ctx = family_context(f, f == Family::Q ? FamilyMode::Exact : FamilyMode::Paper);
    const double delta = family_table_delta(f);
    const double want = ctx.alpha(delta);
    const double got = decay_exponent_fit(integrate_w(ctx, 2.0, delta, 1e6));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s: fitted %.6f vs alpha %.6f", family_name(f).c_str(), got,
                  want);
    c.check(std::abs(got - want) <= 0.02 * want, buf);
  }
  c.finish(60.0);
}

void property_comparison_gap() {
  Criterion c("5g. comparison gap: zero for constant a, certified beyond s_bar");
  const GContext ma = monge_ampere();
  UProfile u = build_u(integrate_w(ma, 2.0, 0.0, 1e6), 0.0);
  const auto grid = geometric_grid(1.0, 1e6, 2.0);
  for (double s : grid)
    if (std::abs(comparison_gap(ma, u, s, 32)) > 1e-10)
      c.check(false, "equal-a gap exceeds 1e-10 at s=" + std::to_string(s));

  const Family fams[] = {Family::H, Family::M, Family::Q, Family::L};
  for (Family f : fams) {
    const GContext ctx = family_context(f, f == Family::Q ? FamilyMode::Exact : FamilyMode::Paper);
    const double delta = family_table_delta(f);
    UProfile uf = build_u(integrate_w(ctx, 2.0, delta, 1e6), 0.0);
    double sbar = 0.0;
    try {
      sbar = find_sbar(ctx, uf, grid, 32);
    } catch (const std::exception& e) {
      c.check(false, family_name(f) + ": certification failed (" + e.what() + ")");
      continue;
    }
    for (double s : grid) {
      if (s < sbar) continue;
      if (comparison_gap(ctx, uf, s, 32) < -1e-10)
        c.check(false, family_name(f) + ": gap below -1e-10 at s=" + std::to_string(s));
    }
  }
  c.finish(60.0);
}

void property_perron() {
  Criterion c("5h. Perron sandwich on the unit ball (Monge-Ampere, phi = 0)");
  const GContext ma = monge_ampere();
  const DomainSpec dom{Matrix::identity(3), 0.5};
  const BoundaryData phi{0.0, Vector(3, 0.0), Matrix(3, 3, 0.0)};
  try {
    const Glue glue = build_glue(ma, dom, phi, 0.0, std::nullopt);  // c = c_star + 1
    const SandwichReport rep = sandwich_check(glue);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "violations %d, boundary gap %.2e vs margin, far-field ratio %.3f",
                  rep.violations, rep.boundary_gap, rep.far_field_worst);
    c.check(rep.violations == 0, buf);
    c.check(rep.omega_beta_violations == 0, "profile branch exceeds beta inside E(sbar)");
    c.check(rep.anchor_gap <= 1e-10, "anchor agreement");
    // between anchors the envelope may only dip below the data by the facet
    // gap of the barrier family, which the margin coefficient controls
    double worst_margin = 1e300;
    for (const Barrier& b : glue.barriers) worst_margin = std::min(worst_margin, b.margin);
    c.check(rep.boundary_gap >= -1e-9, "no data overshoot on the boundary");
    c.check(rep.boundary_gap <= 10.0 * std::max(worst_margin, 1e-3),
            "boundary gap within the barrier margin scale");
    c.check(rep.far_field_worst <= 1.0, "far field within 10 s^{1-alpha}");
  } catch (const std::exception& e) {
    c.check(false, std::string("glue construction failed: ") + e.what());
  }
  c.finish(60.0);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_a_star();
  criterion_example_exponents();
  criterion_thresholds();
  criterion_radial_oracle();
  property_weyl();
  property_eigen_sandwich();
  property_g_profile();
  property_dw_dc2();
  property_mu();
  property_decay();
  property_comparison_gap();
  property_perron();
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s: %d criterion failure(s), %.1fs total%s\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", g_failures, total,
              total > 180.0 ? " (over the 3-minute budget)" : "");
  if (total > 180.0) ++g_failures;
  return g_failures;
}
