// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional searches used by the per-pair subproblems.

#ifndef STARNOMA_SCALAR_SEARCH_HPP
#define STARNOMA_SCALAR_SEARCH_HPP

#include <cmath>
#include <utility>

namespace starnoma {

struct ScalarOptimum {
  double x;
  double value;
};

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// Stops once the bracket is narrower than `tol`; returns the best point seen,
/// endpoints included.
template <typename F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double tol,
                                      int max_iters = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  ScalarOptimum best{lo, f(lo)};
  if (const double fb = f(hi); fb > best.value) best = {hi, fb};
  if (!(hi > lo)) return best;

  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iters && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

/// Smallest x in [lo, hi] (to within `tol`) with pred(x) true, assuming pred is
/// monotone false -> true and pred(hi) holds. Returns {last false, first true}.
template <typename Pred>
std::pair<double, double> bisect_boundary(Pred&& pred, double lo, double hi, double tol,
                                          int max_iters = 200) {
  for (int it = 0; it < max_iters && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace starnoma

#endif  // STARNOMA_SCALAR_SEARCH_HPP
