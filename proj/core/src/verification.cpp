#include "hexsub/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hexsub {

namespace {

bool equal_spectrum(const Spectrum& a) {
  return a.max() - a.min() <= 1e-12 * std::max(1.0, std::abs(a.max()));
}

bool strict_argmax(const GContext& ctx) {
  const Vector g = grad_f(ctx.op, ctx.a);
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[0] > g[i])) return false;
  return true;
}

}  // namespace

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  std::vector<double> g;
  for (double s = lo; s <= hi * (1.0 + 1e-12); s *= ratio) g.push_back(s);
  return g;
}

double comparison_gap(const GContext& ctx, const UProfile& profile, double s, int samples) {
  if (profile.base.delta() == 0.0 && !equal_spectrum(ctx.a) && !strict_argmax(ctx))
    throw std::invalid_argument(
        "comparison_gap: delta = 0 needs constant a or a strict gradient argmax");
  const int n = ctx.a.size();
  const double w = profile.deriv(s);
  const double wp = profile.second_deriv(s);
  const double delta = profile.base.delta();

  Vector bar(static_cast<std::size_t>(n));
  bar[0] = ctx.a[0] * w + (2.0 * ctx.a.max() + delta) * s * wp;
  for (int i = 1; i < n; ++i) bar[static_cast<std::size_t>(i)] = ctx.a[i] * w;
  if (!in_cone(ctx.op, bar))
    throw std::runtime_error("comparison_gap: comparison point left the cone");
  const double f_bar = eval_f(ctx.op, bar);

  double min_gap = std::numeric_limits<double>::infinity();
  for (const Vector& x : sample_level_set(ctx.a, s, samples)) {
    const GSymPoint p = GSymPoint::make(ctx.a, x, w, wp);
    const Spectrum lam = eigen_sym(gsym_hessian(p));
    if (!in_cone(ctx.op, lam)) {
      min_gap = -std::numeric_limits<double>::infinity();
      continue;
    }
    min_gap = std::min(min_gap, eval_f(ctx.op, lam) - f_bar);
  }
  return min_gap;
}

double find_sbar(const GContext& ctx, UProfile& profile, std::span<const double> s_grid,
                 int samples) {
  if (s_grid.empty()) throw std::invalid_argument("find_sbar: empty grid");
  const int n = ctx.a.size();
  const double delta = profile.base.delta();

  std::vector<bool> ok(s_grid.size(), false);
  for (std::size_t gi = 0; gi < s_grid.size(); ++gi) {
    const double s = s_grid[gi];
    const double w = profile.deriv(s);
    const double wp = profile.second_deriv(s);
    Vector bar(static_cast<std::size_t>(n));
    bar[0] = ctx.a[0] * w + (2.0 * ctx.a.max() + delta) * s * wp;
    for (int i = 1; i < n; ++i) bar[static_cast<std::size_t>(i)] = ctx.a[i] * w;
    if (!in_cone(ctx.op, bar)) continue;
    const double f_bar = eval_f(ctx.op, bar);

    bool good = true;
    for (const Vector& x : sample_level_set(ctx.a, s, samples)) {
      const GSymPoint p = GSymPoint::make(ctx.a, x, w, wp);
      const Spectrum lam = eigen_sym(gsym_hessian(p));
      if (!in_cone(ctx.op, lam)) {
        good = false;
        break;
      }
      const double fl = eval_f(ctx.op, lam);
      if (fl - f_bar < -1e-10 || fl < 1.0 - 1e-8) {
        good = false;
        break;
      }
    }
    ok[gi] = good;
  }

  std::size_t first_all_ok = s_grid.size();
  for (std::size_t gi = s_grid.size(); gi-- > 0;) {
    if (!ok[gi]) break;
    first_all_ok = gi;
  }
  if (first_all_ok == s_grid.size())
    throw std::runtime_error("find_sbar: certification failed at the last grid point");
  profile.sbar = s_grid[first_all_ok];
  return profile.sbar;
}

double asymptotic_check(const GContext& ctx, const UProfile& profile, double c,
                        std::span<const double> radii) {
  if (radii.empty()) throw std::invalid_argument("asymptotic_check: no radii");
  const int n = ctx.a.size();
  const double expo = 2.0 * profile.alpha - 2.0;

  std::vector<double> maxima;
  for (double r : radii) {
    // axis directions plus a fixed low-discrepancy set
    std::vector<Vector> dirs;
    for (int i = 0; i < n; ++i) {
      Vector e(static_cast<std::size_t>(n), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      dirs.push_back(std::move(e));
    }
    DirectionSampler ds(n, 11);
    for (int j = 0; j < 16; ++j) dirs.push_back(ds.next());

    double worst = 0.0;
    for (const Vector& d : dirs) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += ctx.a[i] * d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
      s *= 0.5 * r * r;
      if (s > profile.base.s_back())
        throw std::invalid_argument("asymptotic_check: radius outside grid coverage");
      const double diff = std::abs(profile.value(s) - (s + c));
      worst = std::max(worst, std::pow(r, expo) * diff);
    }
    maxima.push_back(worst);
  }
  for (std::size_t i = 0; i + 1 < maxima.size(); ++i)
    if (maxima[i + 1] > maxima[i] * (1.0 + 1e-2) + 1e-12)
      throw std::runtime_error("asymptotic_check: weighted deviation grows with the radius");
  return *std::max_element(maxima.begin(), maxima.end());
}

VerificationReport verify_profile(const GContext& ctx, UProfile& profile,
                                  const VerifyOptions& opt) {
  VerificationReport rep;
  const double s_hi = profile.base.s_back();
  const std::vector<double> grid = geometric_grid(opt.s_grid_lo, s_hi, opt.s_grid_ratio);

  try {
    rep.sbar_found = find_sbar(ctx, profile, grid, opt.samples);
  } catch (const std::exception& e) {
    rep.certified = false;
    rep.detail = e.what();
    return rep;
  }

  rep.min_residual = std::numeric_limits<double>::infinity();
  rep.comparison_min_gap = std::numeric_limits<double>::infinity();
  const int n = ctx.a.size();
  for (double s : grid) {
    if (s < rep.sbar_found) continue;
    const double w = profile.deriv(s);
    const double wp = profile.second_deriv(s);
    rep.comparison_min_gap =
        std::min(rep.comparison_min_gap, comparison_gap(ctx, profile, s, opt.samples));
    for (const Vector& x : sample_level_set(ctx.a, s, opt.samples)) {
      const GSymPoint p = GSymPoint::make(ctx.a, x, w, wp);
      const Spectrum lam = eigen_sym(gsym_hessian(p));
      const EigenBounds b = eigen_bounds(p);
      for (int i = 0; i < n; ++i) {
        if (lam[i] < b.lower[static_cast<std::size_t>(i)] - 1e-10 ||
            lam[i] > b.upper[static_cast<std::size_t>(i)] + 1e-10)
          ++rep.eigen_bound_violations;
      }
      rep.min_residual = std::min(rep.min_residual, eval_f(ctx.op, lam) - 1.0);
      ++rep.samples_used;
    }
  }

  std::vector<double> radii = opt.radii;
  if (radii.empty()) {
    const double r_cap = std::sqrt(2.0 * s_hi / ctx.a.max());
    for (double r = 8.0; r * 2.0 <= r_cap; r *= 2.0) radii.push_back(r);
    if (radii.empty()) radii.push_back(std::max(1.0, 0.5 * r_cap));
  }
  try {
    rep.asymptotic_sup = asymptotic_check(ctx, profile, profile.c1 + profile.mu, radii);
  } catch (const std::exception& e) {
    rep.certified = false;
    rep.detail = e.what();
    return rep;
  }

  rep.certified = rep.min_residual >= -1e-8 && rep.eigen_bound_violations == 0 &&
                  rep.comparison_min_gap >= -1e-10;
  if (!rep.certified) rep.detail = "residual, gap, or eigenvalue bounds out of tolerance";
  return rep;
}

}  // namespace hexsub
