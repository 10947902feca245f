#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hexsub/verification.hpp"

using namespace hexsub;

namespace {

GContext monge_ampere() {
  return make_context(OperatorSpec::sigma_k(3, 3), CandidateMatrix::diagonal({1.0, 1.0, 1.0}));
}

GContext h_context() {
  return make_context(family_operator(Family::H), example_family(Family::H, 0.0874, FamilyMode::Paper));
}

}  // namespace

TEST_CASE("sample_level_set geometry") {
  const Spectrum ones({1.0, 1.0, 1.0});
  for (const Vector& x : sample_level_set(ones, 0.5, 12))
    CHECK(norm2(x) == doctest::Approx(1.0).epsilon(1e-13));

  const Spectrum a({1.0, 2.0, 3.0});
  const auto pts = sample_level_set(a, 10.0, 50);
  CHECK(pts.size() == 53);  // n axis points plus m directions
  // the axis points come first
  CHECK(pts[0][0] == doctest::Approx(std::sqrt(2.0 * 10.0 / 1.0)).epsilon(1e-14));
  CHECK(pts[1][1] == doctest::Approx(std::sqrt(2.0 * 10.0 / 2.0)).epsilon(1e-14));
  for (const Vector& x : pts) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += a[i] * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    CHECK(std::abs(0.5 * s - 10.0) < 1e-12);
  }
}

TEST_CASE("comparison gap vanishes for constant-a profiles") {
  const GContext ma = monge_ampere();
  UProfile u = build_u(integrate_w(ma, 2.0, 0.0, 1e5), 0.0);
  for (double s : {1.0, 4.0, 64.0, 1e4})
    CHECK(std::abs(comparison_gap(ma, u, s, 32)) < 1e-10);

  // flat profile: wp = 0 makes both sides f(a w) exactly
  UProfile flat = build_u(integrate_w(ma, 1.0, 0.0, 1e4), 0.0);
  CHECK(std::abs(comparison_gap(ma, flat, 16.0, 16)) < 1e-14);
}

TEST_CASE("comparison gap is eventually nonnegative for anisotropic contexts") {
  const GContext hc = h_context();
  UProfile u = build_u(integrate_w(hc, 2.0, 0.1, 1e5), 0.0);
  CHECK(comparison_gap(hc, u, 1e4, 32) >= 0.0);
}

TEST_CASE("comparison gap rejects delta = 0 with an anisotropic gradient tie") {
  // a = (1/2, 1/2, 3/4) has sigma_2 = 1 and tied gradient maxima at the two
  // smallest entries, so delta must be positive
  const GContext tie =
      make_context(OperatorSpec::sigma_k(3, 2), CandidateMatrix::diagonal({0.5, 0.5, 0.75}));
  UProfile u = build_u(integrate_w(tie, 1.5, 0.0, 1e3), 0.0);
  CHECK_THROWS_AS(comparison_gap(tie, u, 10.0, 8), std::invalid_argument);
  // the strict-argmax anisotropic case is allowed at delta = 0
  const GContext hc = h_context();
  UProfile uh = build_u(integrate_w(hc, 1.5, 0.0, 1e3), 0.0);
  CHECK_NOTHROW(comparison_gap(hc, uh, 10.0, 8));
}

TEST_CASE("find_sbar: radial and flat profiles certify from the first grid point") {
  const GContext ma = monge_ampere();
  const auto grid = geometric_grid(1.0, 1e5, 2.0);

  UProfile u = build_u(integrate_w(ma, 2.0, 0.0, 1e5), 0.0);
  CHECK(find_sbar(ma, u, grid, 32) == 1.0);
  CHECK(u.sbar == 1.0);

  UProfile flat = build_u(integrate_w(ma, 1.0, 0.0, 1e5), 0.0);
  CHECK(find_sbar(ma, flat, grid, 32) == 1.0);
}

TEST_CASE("find_sbar: anisotropic context certifies at a finite threshold") {
  const GContext hc = h_context();
  UProfile u = build_u(integrate_w(hc, 2.0, 0.1, 1e6), 0.0);
  const auto grid = geometric_grid(1.0, 1e6, 2.0);
  const double sbar = find_sbar(hc, u, grid, 32);
  CHECK(sbar >= 1.0);
  CHECK(sbar < 1e6);
  // beyond the threshold the gap stays within tolerance
  for (double s = sbar; s <= 1e6; s *= 4.0)
    CHECK(comparison_gap(hc, u, s, 32) >= -1e-10);
}

TEST_CASE("asymptotic_check: radial constant, flat zero, dyadic decay ratio") {
  const GContext ma = monge_ampere();
  UProfile u = build_u(integrate_w(ma, 2.0, 0.0, 1e6), 0.0);
  const std::vector<double> radii{16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0};
  const double sup = asymptotic_check(ma, u, u.c1 + u.mu, radii);
  // the s^{-1/2} tail of the closed form gives 14 sqrt(2) / 3
  const double analytic = 14.0 * std::sqrt(2.0) / 3.0;
  CHECK(std::abs(sup - analytic) < 0.05 * analytic);

  UProfile flat = build_u(integrate_w(ma, 1.0, 0.0, 1e6), 0.0);
  CHECK(asymptotic_check(ma, flat, flat.c1 + flat.mu, radii) < 1e-12);

  // unweighted deviation halves per dyadic radius at alpha = 3/2
  double prev = -1.0;
  for (double r : radii) {
    const double s = 0.5 * r * r;
    const double dev = std::abs(u.value(s) - (s + u.mu));
    if (prev > 0.0) CHECK(dev / prev == doctest::Approx(std::pow(2.0, -1.0)).epsilon(0.1));
    prev = dev;
  }

  CHECK_THROWS_AS(asymptotic_check(ma, u, u.mu, std::vector<double>{1e9}), std::invalid_argument);
}

TEST_CASE("verify_profile: radial certification end to end") {
  const GContext ma = monge_ampere();
  UProfile u = build_u(integrate_w(ma, 2.0, 0.0, 1e6), 0.0);
  const VerificationReport rep = verify_profile(ma, u);
  CHECK(rep.certified);
  CHECK(rep.sbar_found == 1.0);
  CHECK(rep.min_residual >= -1e-8);
  CHECK(std::abs(rep.min_residual) < 1e-8);
  CHECK(rep.eigen_bound_violations == 0);
  CHECK(rep.comparison_min_gap >= -1e-10);
  CHECK(rep.samples_used > 500);
}
