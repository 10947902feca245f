#pragma once
// Deterministic low-discrepancy direction generation (additive Kronecker
// sequence pushed through Box-Muller) and point samplers on the quadric
// level sets used throughout verification and gluing. No std random
// machinery, so outputs are bit-stable across platforms.

#include <cstdint>
#include <vector>

#include "hexsub/linalg.hpp"

namespace hexsub {

class DirectionSampler {
public:
  // seed offsets the sequence so independent consumers decorrelate
  explicit DirectionSampler(int dim, std::uint64_t seed = 1);
  Vector next();  // unit vector in R^dim

private:
  int dim_;
  std::uint64_t index_;
  std::vector<double> alpha_;  // frac(sqrt(prime)) per coordinate pair
};

// Scales a direction onto { x : (1/2) sum a_i x_i^2 = s }.
Vector level_set_point(const Spectrum& a, double s, const Vector& dir);

// n axis points plus m low-discrepancy points on the level set.
std::vector<Vector> sample_level_set(const Spectrum& a, double s, int m);

}  // namespace hexsub
