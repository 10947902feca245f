#include "hexsub/frame.hpp"

#include <stdexcept>

namespace hexsub {

Vector AffineFrame::to_reduced(const Vector& x) const {
  Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - t[i];
  return V.transposed() * d;
}

Vector AffineFrame::to_original(const Vector& y) const {
  Vector x = V * y;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += t[i];
  return x;
}

ReducedProblem reduce_frame(const OperatorSpec& op, const CandidateMatrix& A, const Vector& b,
                            double level_tolerance) {
  const int n = A.dim();
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("reduce_frame: b has the wrong length");

  AdmissibilityReport report = analyze(op, A, level_tolerance);
  if (!report.in_A)
    throw std::invalid_argument("reduce_frame: matrix not admissible (" + report.reason + ")");

  const EigenSystem es = eigen_sym_system(A.matrix());

  AffineFrame frame;
  frame.V = es.vectors;
  // t = -A^{-1} b = -V diag(1/a) V^T b
  const Vector vb = es.vectors.transposed() * b;
  Vector scaled(vb.size());
  for (int i = 0; i < n; ++i) scaled[static_cast<std::size_t>(i)] = vb[static_cast<std::size_t>(i)] / es.values[i];
  frame.t = es.vectors * scaled;
  for (double& v : frame.t) v = -v;
  // c' = c - (1/2) b^T A^{-1} b = c + (1/2) b.t
  frame.c_shift = 0.5 * dot(b, frame.t);

  return ReducedProblem{std::move(report), std::move(frame)};
}

}  // namespace hexsub
