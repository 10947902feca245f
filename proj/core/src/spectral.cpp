#include "hexsub/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hexsub {

namespace {

double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenSystem eigen_sym_system(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("eigen_sym: matrix must be square");
  const int n = m.rows();
  const double scale = std::max(1e-300, m.frobenius_norm());
  if (m.max_asymmetry() > 1e-10 * std::max(1.0, scale))
    throw std::invalid_argument("eigen_sym: matrix is not symmetric");

  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  Matrix v = Matrix::identity(n);

  const double target = 1e-12 * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_norm(a) <= target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (offdiag_norm(a) > target)
    throw std::runtime_error("eigen_sym: Jacobi sweeps did not converge");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  Vector vals(static_cast<std::size_t>(n));
  Matrix vecs(n, n);
  for (int c2 = 0; c2 < n; ++c2) {
    vals[static_cast<std::size_t>(c2)] = a(order[static_cast<std::size_t>(c2)],
                                           order[static_cast<std::size_t>(c2)]);
    for (int r = 0; r < n; ++r) vecs(r, c2) = v(r, order[static_cast<std::size_t>(c2)]);
  }
  return {Spectrum::from_sorted(std::move(vals)), std::move(vecs)};
}

Spectrum eigen_sym(const Matrix& m) { return eigen_sym_system(m).values; }

GSymPoint GSymPoint::make(Spectrum a, Vector x, double w, double wp) {
  if (a.size() != static_cast<int>(x.size()))
    throw std::invalid_argument("GSymPoint: a and x size mismatch");
  GSymPoint p;
  p.a = std::move(a);
  p.x = std::move(x);
  p.w = w;
  p.wp = wp;
  double s = 0.0, u = 0.0;
  for (int i = 0; i < p.a.size(); ++i) {
    const double xi = p.x[static_cast<std::size_t>(i)];
    s += p.a[i] * xi * xi;
    u += p.a[i] * p.a[i] * xi * xi;
  }
  p.s = 0.5 * s;
  p.U = u;
  return p;
}

Matrix gsym_hessian(const GSymPoint& p) {
  const int n = p.a.size();
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xi = p.x[static_cast<std::size_t>(i)];
      const double xj = p.x[static_cast<std::size_t>(j)];
      h(i, j) = p.a[i] * p.a[j] * xi * xj * p.wp;
      if (i == j) h(i, j) += p.a[i] * p.w;
    }
  }
  return h;
}

EigenBounds eigen_bounds(const GSymPoint& p) {
  if (!(p.w > 0.0)) throw std::domain_error("eigen_bounds: requires w > 0");
  if (!(p.wp <= 0.0)) throw std::domain_error("eigen_bounds: requires wp <= 0");
  const int n = p.a.size();
  EigenBounds b;
  b.lower.resize(static_cast<std::size_t>(n));
  b.upper.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    b.upper[static_cast<std::size_t>(i)] = p.a[i] * p.w;
    b.lower[static_cast<std::size_t>(i)] = p.a[i] * p.w + p.U * p.wp;
  }
  return b;
}

double WeylSlacks::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : upper) m = std::min(m, e.slack);
  for (const auto& e : lower) m = std::min(m, e.slack);
  return m;
}

WeylSlacks weyl_bounds(const Matrix& a, const Matrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw std::invalid_argument("weyl_bounds: dimension mismatch");
  const int n = a.rows();
  const Spectrum la = eigen_sym(a);
  const Spectrum lb = eigen_sym(b);
  const Spectrum lab = eigen_sym(a + b);

  WeylSlacks out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j)
      out.upper.push_back({i, j, la[i + j - 1] + lb[n - j - 1] - lab[i - 1]});
    for (int j = 1; j <= i; ++j)
      out.lower.push_back({i, j, lab[i - 1] - la[i - j] - lb[j - 1]});
  }
  return out;
}

}  // namespace hexsub
