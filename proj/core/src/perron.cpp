#include "hexsub/perron.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "hexsub/rootfind.hpp"

namespace hexsub {

namespace {

double quad_form(const Matrix& m, const Vector& x) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      s += x[static_cast<std::size_t>(i)] * m(i, j) * x[static_cast<std::size_t>(j)];
  return s;
}

double max_t_cap() {
  if (const char* env = std::getenv("HEXSUB_MAX_T")) {
    const double v = std::atof(env);
    if (v > 0.0) return v;
  }
  return 1e12;
}

// solve A y = rhs for small dense symmetric positive definite A
Vector solve_spd(const Matrix& a, const Vector& rhs) {
  const int n = a.rows();
  Matrix m = a;
  Vector y = rhs;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (std::abs(m(piv, c)) < 1e-300) throw std::runtime_error("solve_spd: singular matrix");
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      std::swap(y[static_cast<std::size_t>(c)], y[static_cast<std::size_t>(piv)]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
      y[static_cast<std::size_t>(r)] -= f * y[static_cast<std::size_t>(c)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = y[static_cast<std::size_t>(r)];
    for (int j = r + 1; j < n; ++j) s -= m(r, j) * y[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(r)] = s / m(r, r);
  }
  return y;
}

std::vector<Vector> boundary_directions(int n, int count, std::uint64_t seed) {
  std::vector<Vector> dirs;
  for (int i = 0; i < n; ++i) {
    Vector e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    dirs.push_back(e);
    for (double& v : e) v = -v;
    dirs.push_back(e);
  }
  DirectionSampler ds(n, seed);
  while (static_cast<int>(dirs.size()) < count) dirs.push_back(ds.next());
  return dirs;
}

}  // namespace

double DomainSpec::level(const Vector& x) const { return 0.5 * quad_form(B, x); }

Vector DomainSpec::boundary_point(const Vector& dir) const {
  const double q = quad_form(B, dir);
  if (!(q > 0.0)) throw std::invalid_argument("DomainSpec: degenerate direction");
  const double t = std::sqrt(2.0 * r / q);
  Vector x(dir);
  for (double& v : x) v *= t;
  return x;
}

Vector DomainSpec::outward_normal(const Vector& x) const {
  Vector g = B * x;
  const double n = norm2(g);
  if (!(n > 0.0)) throw std::invalid_argument("DomainSpec: normal undefined at the center");
  for (double& v : g) v /= n;
  return g;
}

double BoundaryData::operator()(const Vector& x) const {
  return c0 + dot(b, x) + 0.5 * quad_form(Q, x);
}

Vector BoundaryData::gradient(const Vector& x) const {
  Vector g = Q * x;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += b[i];
  return g;
}

double Barrier::value(const Vector& x) const {
  const int n = A.rows();
  Vector dx(static_cast<std::size_t>(n)), dxi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    dx[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - xbar[static_cast<std::size_t>(i)];
    dxi[static_cast<std::size_t>(i)] = xi[static_cast<std::size_t>(i)] - xbar[static_cast<std::size_t>(i)];
  }
  return phi_at_xi + 0.5 * (quad_form(A, dx) - quad_form(A, dxi));
}

Barrier build_barrier(const DomainSpec& dom, const BoundaryData& phi, const CandidateMatrix& A,
                      const Vector& xi, int samples) {
  const int n = dom.dim();
  if (std::abs(dom.level(xi) - dom.r) > 1e-10 * std::max(1.0, dom.r))
    throw std::invalid_argument("build_barrier: xi is not on the boundary");

  const Vector nu = dom.outward_normal(xi);
  const Vector grad_phi = phi.gradient(xi);
  const double phi_xi = phi(xi);

  std::vector<Vector> bdry;
  for (const Vector& d : boundary_directions(n, samples, 23)) {
    Vector x = dom.boundary_point(d);
    double dist2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      dist2 += (x[i] - xi[i]) * (x[i] - xi[i]);
    if (dist2 > 1e-20) bdry.push_back(std::move(x));
  }

  const double t_cap = max_t_cap();
  const Spectrum a_eigs = A.eigenvalues();
  const double req = std::max(1e-3 * a_eigs.min(), 1e-12);
  Barrier bar;
  bar.xi = xi;
  bar.A = A.matrix();
  bar.phi_at_xi = phi_xi;

  auto place_vertex = [&](double t) {
    Vector dirvec(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      dirvec[static_cast<std::size_t>(i)] =
          grad_phi[static_cast<std::size_t>(i)] + t * nu[static_cast<std::size_t>(i)];
    const Vector shift = solve_spd(bar.A, dirvec);
    bar.xbar.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      bar.xbar[static_cast<std::size_t>(i)] =
          xi[static_cast<std::size_t>(i)] - shift[static_cast<std::size_t>(i)];
  };
  Vector worst_sample;
  auto min_margin = [&](double t) {
    place_vertex(t);
    double worst = std::numeric_limits<double>::infinity();
    for (const Vector& x : bdry) {
      double dist2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dist2 += (x[i] - xi[i]) * (x[i] - xi[i]);
      const double m = (phi(x) - bar.value(x)) / dist2;
      if (m < worst) {
        worst = m;
        worst_sample = x;
      }
    }
    return worst;
  };

  double t_ok = -1.0;
  for (double t = 1.0; t <= t_cap; t *= 2.0) {
    if (min_margin(t) >= req) {
      t_ok = t;
      break;
    }
  }
  if (t_ok < 0.0) {
    std::string msg = "build_barrier: vertex search exceeded the t cap; worst margin " +
                      std::to_string(min_margin(t_cap)) + " at (";
    for (std::size_t i = 0; i < worst_sample.size(); ++i)
      msg += (i ? "," : "") + std::to_string(worst_sample[i]);
    msg += ")";
    throw std::runtime_error(msg);
  }
  // back off to the smallest t still clearing the margin; an overshot vertex
  // steepens the whole envelope and everything glued on top of it
  double t_bad = 0.0;
  for (int it = 0; it < 48 && t_ok - t_bad > 1e-9 * t_ok; ++it) {
    const double tm = 0.5 * (t_bad + t_ok);
    if (min_margin(tm) >= req)
      t_ok = tm;
    else
      t_bad = tm;
  }
  bar.margin = min_margin(t_ok);
  return bar;
}

double lower_envelope(std::span<const Barrier> barriers, const Vector& x) {
  if (barriers.empty()) throw std::invalid_argument("lower_envelope: no barriers");
  double m = -std::numeric_limits<double>::infinity();
  for (const Barrier& b : barriers) m = std::max(m, b.value(x));
  return m;
}

double mu_sbar(const GContext& ctx, double c2, double delta, double sbar, double beta,
               double s_max) {
  if (c2 == 1.0) return beta - sbar;
  const WProfile prof = integrate_w(ctx, c2, delta, s_max);
  const double send = prof.s_back();
  const double integral = prof.integral_w_minus_1(sbar, send);
  const PowerLawFit fit = fit_tail(prof, send / 10.0, send);
  double tail = 0.0;
  if (fit.amplitude > 0.0) {
    if (!(fit.exponent > 1.0)) throw std::runtime_error("mu_sbar: tail exponent not integrable");
    tail = fit.amplitude * std::pow(send, 1.0 - fit.exponent) / (fit.exponent - 1.0);
  }
  return integral + tail + beta - sbar;
}

double alpha_of_c(const GContext& ctx, double c, const GlueConfig& cfg) {
  if (!(c > cfg.c_star)) throw std::invalid_argument("alpha_of_c: requires c > c_star");
  auto level = [&](double c2) {
    return mu_sbar(ctx, c2, cfg.delta, cfg.sbar, cfg.beta, cfg.s_max) - c;
  };
  double lo = 1.0;
  double hi = 2.0;
  while (level(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e9) throw std::runtime_error("alpha_of_c: mu_sbar never reaches c");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (level(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double Glue::level(const Vector& x) const {
  double s = 0.0;
  for (int i = 0; i < ctx.a.size(); ++i)
    s += ctx.a[i] * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  return 0.5 * s;
}

double Glue::omega(const Vector& x) const {
  return profile.value(level(x)) - u_at_sbar + cfg.beta;
}

double Glue::value(const Vector& x) const {
  if (dom.contains(x)) throw std::invalid_argument("glue value undefined inside D");
  const double s = level(x);
  if (s < cfg.sbar) return lower_envelope(barriers, x);
  if (s < cfg.shat) return std::max(omega(x), lower_envelope(barriers, x));
  return omega(x);
}

double Glue::upper(const Vector& x) const { return level(x) + cfg.c; }

Glue build_glue(const GContext& ctx, const DomainSpec& dom, const BoundaryData& phi,
                double delta, std::optional<double> c, const GlueOptions& opt) {
  const int n = ctx.a.size();
  if (dom.dim() != n) throw std::invalid_argument("build_glue: dimension mismatch");
  if (!(ctx.alpha(delta) > 1.0)) throw std::invalid_argument("build_glue: alpha_delta <= 1");

  const CandidateMatrix A = CandidateMatrix::diagonal(ctx.a.values());

  // barriers at low-discrepancy boundary anchors
  std::vector<Barrier> barriers;
  for (const Vector& d : boundary_directions(n, opt.barrier_count, 5))
    barriers.push_back(build_barrier(dom, phi, A, dom.boundary_point(d), opt.boundary_samples));

  // range of (1/2) x^T A x over the boundary of D
  double sD_min = std::numeric_limits<double>::infinity();
  double sD_max = 0.0;
  std::vector<Vector> bdry_samples;
  for (const Vector& d : boundary_directions(n, 512, 31)) {
    Vector x = dom.boundary_point(d);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += ctx.a[i] * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    s *= 0.5;
    sD_min = std::min(sD_min, s);
    sD_max = std::max(sD_max, s);
    bdry_samples.push_back(std::move(x));
  }
  const double s_min = std::min(1.0, 0.9 * sD_min);

  // certification threshold from a reference profile, pushed past the
  // boundary of D so the three glue regions nest
  GlueConfig cfg;
  cfg.delta = delta;
  cfg.s_max = opt.s_max;
  {
    const WProfile wref = integrate_w(ctx, opt.chat_init, delta, opt.s_max, 1e-10, s_min);
    UProfile uref = build_u(wref, 0.0);
    const auto grid = geometric_grid(1.0, opt.s_max, opt.s_grid_ratio);
    double sbar = find_sbar(ctx, uref, grid, opt.level_samples);
    while (sbar <= sD_max) sbar *= opt.s_grid_ratio;
    cfg.sbar = sbar;
  }

  // beta and bhat over a cloud of E(sbar) \ D
  {
    double beta = std::numeric_limits<double>::infinity();
    double bhat = -std::numeric_limits<double>::infinity();
    auto visit = [&](const Vector& x) {
      for (const Barrier& b : barriers) {
        const double v = b.value(x);
        beta = std::min(beta, v);
        bhat = std::max(bhat, v);
      }
    };
    for (const Vector& x : bdry_samples) visit(x);
    const int per_dir = 8;
    DirectionSampler ds(n, 17);
    const int dirs = std::max(1, opt.cloud_size / per_dir);
    for (int j = 0; j < dirs; ++j) {
      const Vector d = ds.next();
      const Vector xb = dom.boundary_point(d);
      double s0 = 0.0;
      for (int i = 0; i < n; ++i)
        s0 += ctx.a[i] * xb[static_cast<std::size_t>(i)] * xb[static_cast<std::size_t>(i)];
      s0 *= 0.5;
      for (int k = 1; k <= per_dir; ++k) {
        const double s_target = s0 * std::pow(cfg.sbar / s0, double(k) / per_dir);
        const double scale = std::sqrt(s_target / s0);
        Vector x(xb);
        for (double& v : x) v *= scale;
        visit(x);
      }
    }
    cfg.beta = beta;
    cfg.bhat = bhat;
  }

  // shat: first grid value past sbar; chat: doubled until the profile branch
  // clears the envelope on the shell boundary
  cfg.shat = cfg.sbar * opt.s_grid_ratio;
  {
    std::vector<Vector> shell;
    DirectionSampler ds(n, 13);
    for (int j = 0; j < 128; ++j)
      shell.push_back(level_set_point(ctx.a, cfg.shat, ds.next()));
    for (const Vector& x : sample_level_set(ctx.a, cfg.shat, 32)) shell.push_back(x);

    double env_max = -std::numeric_limits<double>::infinity();
    for (const Vector& x : shell) env_max = std::max(env_max, lower_envelope(barriers, x));

    double chat = std::max(2.0, opt.chat_init);
    bool ok = false;
    for (; chat <= double(1 << 24); chat *= 2.0) {
      const WProfile wc = integrate_w(ctx, chat, delta, opt.s_max);
      const UProfile uc = build_u(wc, 0.0);
      const double omega_min = uc.value(cfg.shat) - uc.value(cfg.sbar) + cfg.beta;
      if (omega_min > env_max) {
        ok = true;
        break;
      }
    }
    if (!ok) throw std::runtime_error("build_glue: no chat separates the envelope");
    cfg.chat = chat;
  }

  cfg.c_star = std::max(mu_sbar(ctx, cfg.chat, delta, cfg.sbar, cfg.beta, cfg.s_max),
                        cfg.bhat + 1e-9 * std::max(1.0, std::abs(cfg.bhat)));
  cfg.c = c ? *c : cfg.c_star + 1.0;
  if (!(cfg.c > cfg.c_star))
    throw std::invalid_argument("build_glue: c must exceed c_star = " + std::to_string(cfg.c_star));

  cfg.alpha_c = alpha_of_c(ctx, cfg.c, cfg);

  const WProfile wfin = integrate_w(ctx, cfg.alpha_c, delta, opt.s_max, 1e-10, s_min);
  UProfile ufin = build_u(wfin, 0.0);
  // re-certify with the final profile
  {
    const auto grid = geometric_grid(1.0, opt.s_max, opt.s_grid_ratio);
    double sbar2 = find_sbar(ctx, ufin, grid, opt.level_samples);
    if (sbar2 > cfg.sbar)
      throw std::runtime_error("build_glue: final profile certifies later than the reference");
    ufin.sbar = cfg.sbar;
  }

  Glue glue{cfg, std::move(barriers), std::move(ufin), dom, phi, ctx, 0.0};
  glue.u_at_sbar = glue.profile.value(cfg.sbar);
  return glue;
}

SandwichReport sandwich_check(const Glue& glue, int samples_per_region) {
  SandwichReport rep;
  const GContext& ctx = glue.ctx;
  const int n = ctx.a.size();
  const double tol = 1e-9;

  auto check_point = [&](const Vector& x) {
    const double lo = glue.value(x);
    const double hi = glue.upper(x);
    ++rep.samples;
    if (lo > hi + tol) {
      ++rep.violations;
      rep.worst_violation = std::max(rep.worst_violation, lo - hi);
    }
  };

  // boundary of D: anchors agree with phi exactly, the rest within the
  // envelope's facet gap
  for (const Barrier& b : glue.barriers) {
    const double v = lower_envelope(glue.barriers, b.xi);
    rep.anchor_gap = std::max(rep.anchor_gap, std::abs(v - glue.phi(b.xi)));
    check_point(b.xi);
  }
  {
    DirectionSampler ds(n, 41);
    for (int j = 0; j < samples_per_region; ++j) {
      const Vector x = glue.dom.boundary_point(ds.next());
      const double diff = glue.phi(x) - lower_envelope(glue.barriers, x);
      rep.boundary_gap = std::max(rep.boundary_gap, diff);
      if (diff < -1e-9) ++rep.violations;
      check_point(x);
    }
  }

  // region 1: E(sbar) \ D, where the glue is the envelope and the profile
  // branch must sit below beta
  {
    DirectionSampler ds(n, 43);
    const int dirs = std::max(1, samples_per_region / 8);
    for (int j = 0; j < dirs; ++j) {
      const Vector d = ds.next();
      const Vector xb = glue.dom.boundary_point(d);
      const double s0 = glue.level(xb);
      for (int k = 1; k <= 8; ++k) {
        const double st = s0 * std::pow(glue.cfg.sbar / s0, (k - 0.5) / 8.0);
        Vector x(xb);
        const double scale = std::sqrt(st / s0);
        for (double& v : x) v *= scale;
        if (glue.dom.contains(x)) continue;
        check_point(x);
        if (glue.omega(x) > glue.cfg.beta + 1e-9) ++rep.omega_beta_violations;
      }
    }
  }

  // region 2: E(shat) \ E(sbar)
  {
    DirectionSampler ds(n, 47);
    for (int j = 0; j < samples_per_region; ++j) {
      const double frac = (j + 0.5) / samples_per_region;
      const double st = glue.cfg.sbar * std::pow(glue.cfg.shat / glue.cfg.sbar, frac);
      check_point(level_set_point(ctx.a, st, ds.next()));
    }
  }

  // region 3: outside E(shat), dyadic levels up to grid coverage
  {
    DirectionSampler ds(n, 53);
    const double alpha = glue.profile.alpha;
    for (double st = glue.cfg.shat; st <= glue.profile.base.s_back() * (1.0 + 1e-12);
         st *= 2.0) {
      for (int j = 0; j < 16; ++j) {
        const Vector x = level_set_point(ctx.a, st, ds.next());
        check_point(x);
        const double allowance = 10.0 * std::pow(st, 1.0 - alpha);
        const double dev = std::abs(glue.value(x) - glue.upper(x));
        rep.far_field_worst = std::max(rep.far_field_worst, dev / allowance);
      }
    }
  }

  // interface continuity
  {
    DirectionSampler ds(n, 59);
    for (int j = 0; j < 64; ++j) {
      const Vector d = ds.next();
      for (double s_if : {glue.cfg.sbar, glue.cfg.shat}) {
        const Vector xin = level_set_point(ctx.a, s_if * (1.0 - 1e-9), d);
        const Vector xout = level_set_point(ctx.a, s_if * (1.0 + 1e-9), d);
        if (glue.dom.contains(xin)) continue;
        rep.interface_jump =
            std::max(rep.interface_jump, std::abs(glue.value(xin) - glue.value(xout)));
      }
    }
  }

  rep.pass = rep.violations == 0 && rep.omega_beta_violations == 0 &&
             rep.far_field_worst <= 1.0 && rep.interface_jump <= 1e-8 * (1.0 + std::abs(glue.cfg.c));
  return rep;
}

}  // namespace hexsub
