#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "heinz/errors.hpp"

namespace heinz {

namespace detail {

// One level of Simpson refinement with Richardson correction.  `whole` is
// the Simpson value for [a,b]; fa/fm/fb the integrand at a, midpoint, b.
template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth,
                       bool& converged) {
  double m = 0.5 * (a + b);
  double lx = 0.5 * (a + m);
  double rx = 0.5 * (m + b);
  double flm = f(lx);
  double frm = f(rx);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                         converged) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                         converged);
}

template <class F>
double simpson_piece(F& f, double a, double b, double tol, bool& converged) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a);
  double fm = f(m);
  double fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48, converged);
}

}  // namespace detail

// Adaptive Simpson over [a,b] with mandatory subdivision at `splits`.
// Each piece gets a tolerance share proportional to its length.  A piece
// that exhausts the refinement budget raises convergence_error carrying the
// best available estimate.
template <class F>
double integrate(F&& f, double a, double b, double tol,
                 std::vector<double> splits = {}) {
  if (!(std::isfinite(a) && std::isfinite(b)) || a > b)
    throw domain_error("integrate: need finite bounds with a <= b");
  if (!(tol > 0.0)) throw domain_error("integrate: tol must be > 0");
  splits.erase(std::remove_if(splits.begin(), splits.end(),
                              [&](double s) { return s <= a || s >= b; }),
               splits.end());
  std::sort(splits.begin(), splits.end());
  splits.push_back(b);

  double total_len = b - a;
  double lo = a;
  double sum = 0.0;
  bool converged = true;
  for (double hi : splits) {
    double share = tol * std::max((hi - lo) / total_len, 1e-3);
    sum += detail::simpson_piece(f, lo, hi, share, converged);
    lo = hi;
  }
  if (!converged)
    throw convergence_error("integrate: refinement budget exhausted", sum);
  return sum;
}

}  // namespace heinz
