#pragma once
// Affine reduction to the frame where A is diagonal and the linear term
// vanishes: x = V y + t with V orthogonal (columns = eigenvectors of A,
// ascending) and t = -A^{-1} b. The prescribed quadratic
// (1/2) x^T A x + b.x + c becomes (1/2) y^T diag(a) y + c + c_shift.

#include "hexsub/admissibility.hpp"

namespace hexsub {

struct AffineFrame {
  Matrix V;
  Vector t;
  double c_shift = 0.0;

  Vector to_reduced(const Vector& x) const;   // y = V^T (x - t)
  Vector to_original(const Vector& y) const;  // x = V y + t
};

struct ReducedProblem {
  AdmissibilityReport report;  // of the original matrix (eigenvalues shared)
  AffineFrame frame;
};

// Requires A in the admissible set; throws otherwise.
ReducedProblem reduce_frame(const OperatorSpec& op, const CandidateMatrix& A, const Vector& b,
                            double level_tolerance = kExactLevelTolerance);

}  // namespace hexsub
