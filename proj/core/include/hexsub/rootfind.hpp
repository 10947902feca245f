#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hexsub {

// Bracketed scalar root finding: bisection to shrink the bracket, then
// secant steps confined to it. Requires f(lo) < 0 <= f(hi). Stops when the
// bracket width drops below tol_abs.
template <class F>
double bisect_secant(F&& f, double lo, double hi, double flo, double fhi, double tol_abs,
                     int max_iter = 400) {
  if (!(flo < 0.0) || !(fhi >= 0.0))
    throw std::runtime_error("bisect_secant: endpoints do not bracket a root");
  // bisection until the bracket is small enough for secant to be safe
  const double coarse = std::max(tol_abs * 1e4, 1e-9 * (std::abs(lo) + std::abs(hi) + 1.0));
  int it = 0;
  while (hi - lo > coarse && it++ < max_iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  // secant polish, falling back to bisection when a step leaves the bracket
  for (int k = 0; k < 64 && hi - lo > tol_abs; ++k) {
    double x;
    const double denom = fhi - flo;
    if (denom != 0.0) {
      x = lo - flo * (hi - lo) / denom;
      const double guard = 0.01 * (hi - lo);
      if (!(x > lo + guard && x < hi - guard)) x = 0.5 * (lo + hi);
    } else {
      x = 0.5 * (lo + hi);
    }
    const double fx = f(x);
    if (fx < 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  while (hi - lo > tol_abs && it++ < max_iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

template <class F>
double bisect_secant(F&& f, double lo, double hi, double tol_abs, int max_iter = 400) {
  const double flo = f(lo);
  const double fhi = f(hi);
  return bisect_secant(std::forward<F>(f), lo, hi, flo, fhi, tol_abs, max_iter);
}

}  // namespace hexsub
