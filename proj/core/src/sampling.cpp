#include "hexsub/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace hexsub {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                       41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

double frac(double x) { return x - std::floor(x); }

}  // namespace

DirectionSampler::DirectionSampler(int dim, std::uint64_t seed) : dim_(dim), index_(seed) {
  if (dim < 1) throw std::invalid_argument("DirectionSampler: dim >= 1 required");
  const int pairs = dim + (dim % 2);
  if (pairs > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw std::invalid_argument("DirectionSampler: dimension too large");
  alpha_.resize(static_cast<std::size_t>(pairs));
  for (int i = 0; i < pairs; ++i) alpha_[static_cast<std::size_t>(i)] = frac(std::sqrt(double(kPrimes[i])));
}

Vector DirectionSampler::next() {
  Vector v(static_cast<std::size_t>(dim_), 0.0);
  for (;;) {
    const double idx = static_cast<double>(++index_);
    for (int i = 0; i < dim_; i += 2) {
      double u1 = frac(idx * alpha_[static_cast<std::size_t>(i)]);
      double u2 = frac(idx * alpha_[static_cast<std::size_t>(i) + 1]);
      if (u1 < 1e-12) u1 = 1e-12;
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[static_cast<std::size_t>(i)] = r * std::cos(kTwoPi * u2);
      if (i + 1 < dim_) v[static_cast<std::size_t>(i) + 1] = r * std::sin(kTwoPi * u2);
    }
    const double n = norm2(v);
    if (n > 1e-8) {
      for (double& x : v) x /= n;
      return v;
    }
  }
}

Vector level_set_point(const Spectrum& a, double s, const Vector& dir) {
  if (a.size() != static_cast<int>(dir.size()))
    throw std::invalid_argument("level_set_point: dimension mismatch");
  double q = 0.0;
  for (int i = 0; i < a.size(); ++i) q += a[i] * dir[static_cast<std::size_t>(i)] * dir[static_cast<std::size_t>(i)];
  if (!(q > 0.0)) throw std::invalid_argument("level_set_point: direction degenerate for a");
  const double r = std::sqrt(2.0 * s / q);
  Vector x(dir);
  for (double& xi : x) xi *= r;
  return x;
}

std::vector<Vector> sample_level_set(const Spectrum& a, double s, int m) {
  if (!(s > 0.0)) throw std::invalid_argument("sample_level_set: s > 0 required");
  if (m < 1) throw std::invalid_argument("sample_level_set: m >= 1 required");
  const int n = a.size();
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(n + m));
  for (int i = 0; i < n; ++i) {
    Vector x(static_cast<std::size_t>(n), 0.0);
    x[static_cast<std::size_t>(i)] = std::sqrt(2.0 * s / a[i]);
    pts.push_back(std::move(x));
  }
  DirectionSampler ds(n, 1);
  for (int j = 0; j < m; ++j) pts.push_back(level_set_point(a, s, ds.next()));
  return pts;
}

}  // namespace hexsub
