// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_NUMERIC_HPP
#define FASTBO_NUMERIC_HPP

#include <algorithm>
#include <cmath>

namespace fastbo::detail {

// Derivative-free 1-d minimizer on [lo, hi]; stops on the iteration budget or
// once the bracket has shrunk below width_rel_tol relative to its span.
// (Stopping on value change is unreliable here: golden-section iterates can
// tie transiently near a parabolic minimum long before the bracket is tight.)
template <typename F>
double golden_section(F&& f, double lo, double hi, int max_iter, double width_rel_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  const double span = hi - lo;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
    if (hi - lo <= width_rel_tol * span) break;
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace fastbo::detail

#endif  // FASTBO_NUMERIC_HPP
