#pragma once
// Shared helpers for the test suites: a deterministic uniform generator
// (mt19937_64 bit stream, manual mapping, no std distributions) and small
// builders for random symmetric matrices and cone points.

#include <cstdint>
#include <random>

#include "hexsub/linalg.hpp"

namespace hexsub::testutil {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::mt19937_64 eng_;
};

inline Matrix random_symmetric(Rng& rng, int n, double scale = 1.0) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.uniform(-scale, scale);
  return m;
}

inline Vector random_positive(Rng& rng, int n, double lo = 0.1, double hi = 3.0) {
  Vector v(static_cast<std::size_t>(n));
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace hexsub::testutil
