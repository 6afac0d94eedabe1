#pragma once

#include <cmath>
#include <utility>

// Scalar bracketed solvers shared by the transform and level-set code.
// All of them assume the bracket is mathematically valid and never step
// outside it, so callers can rely on pole-free evaluation points.

namespace fc::detail {

inline constexpr int kMaxBisectIter = 200;

// Root of a strictly decreasing function on the open interval (lo, hi),
// where fn > 0 near lo and fn < 0 near hi. The endpoints themselves are
// never evaluated (they may be poles).
template <class F>
double bisect_decreasing(F&& fn, double lo, double hi, double xtol) {
  double a = lo, b = hi;
  for (int it = 0; it < kMaxBisectIter; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // interval no longer representable
    const double v = fn(mid);
    if (v > 0.0) {
      a = mid;
    } else if (v < 0.0) {
      b = mid;
    } else {
      return mid;
    }
    if (b - a <= xtol) break;
  }
  return 0.5 * (a + b);
}

template <class F>
double bisect_increasing(F&& fn, double lo, double hi, double xtol) {
  return bisect_decreasing([&fn](double x) { return -fn(x); }, lo, hi, xtol);
}

// Minimum of a strictly convex function on (lo, hi). Golden-section search;
// endpoints are not evaluated, so the bracket may abut poles. Returns the
// abscissa and the value there.
template <class F>
std::pair<double, double> golden_min(F&& fn, double lo, double hi, double xtol) {
  constexpr double invphi = 0.6180339887498949;   // 1/phi
  constexpr double invphi2 = 0.3819660112501051;  // 1/phi^2
  double a = lo, b = hi;
  double h = b - a;
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc_ = fn(c);
  double fd = fn(d);
  for (int it = 0; it < kMaxBisectIter && h > xtol; ++it) {
    if (fc_ < fd) {
      b = d;
      d = c;
      fd = fc_;
      h = b - a;
      c = a + invphi2 * h;
      fc_ = fn(c);
    } else {
      a = c;
      c = d;
      fc_ = fd;
      h = b - a;
      d = a + invphi * h;
      fd = fn(d);
    }
    if (c >= d) break;
  }
  return (fc_ < fd) ? std::make_pair(c, fc_) : std::make_pair(d, fd);
}

}  // namespace fc::detail
