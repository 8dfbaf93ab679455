#pragma once

#include <cmath>
#include <optional>

namespace polyflood::roots {

inline constexpr double kTolerance = 1e-12;
inline constexpr int kMaxIterations = 200;

/// Bisection for a root of `func` on [lo, hi], assuming func(lo) and func(hi)
/// have opposite signs (or one of them is zero). Returns std::nullopt when the
/// interval does not bracket a sign change.
///
/// Endpoint values that are exactly zero are returned as-is so callers get
/// exact roots at the ends of the saturation interval.
template <class Func>
std::optional<double> bisect(Func&& func, double lo, double hi,
                             double tol = kTolerance,
                             int max_iter = kMaxIterations) {
  double f_lo = func(lo);
  if (f_lo == 0.0) return lo;
  double f_hi = func(hi);
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) return std::nullopt;
  const bool lo_negative = f_lo < 0.0;
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = func(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Bisection when the sign at `lo` is known to be `positive_at_lo` even though
/// func(lo) itself may vanish (e.g. g(0) = 0 for fluxes with f_s(0) = 0).
template <class Func>
double bisect_oriented(Func&& func, double lo, double hi, bool positive_at_lo,
                       double tol = kTolerance,
                       int max_iter = kMaxIterations) {
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = func(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == positive_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section search for the maximizer of a unimodal function on
/// [lo, hi]. Stops once the bracket is narrower than `tol`; returns the final
/// bracket so callers can refine further with a derivative.
struct Bracket {
  double lo;
  double hi;
};

template <class Func>
Bracket golden_section_max(Func&& func, double lo, double hi,
                           double tol = 1e-7, int max_iter = kMaxIterations) {
  constexpr double inv_phi = 0.61803398874989484820;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = func(x1);
  double f2 = func(x2);
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = func(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = func(x1);
    }
  }
  return {lo, hi};
}

/// Maximizer of a unimodal function with derivative `dfunc`.
///
/// Golden section narrows the bracket, then bisection on the derivative
/// sharpens the location to `tol` (the function value alone cannot resolve a
/// smooth maximum below ~sqrt(eps)). Endpoints win when they are at least as
/// large as the interior candidate, which covers monotone functions.
template <class Func, class DFunc>
double argmax_unimodal(Func&& func, DFunc&& dfunc, double lo, double hi,
                       double tol = kTolerance) {
  const double width = hi - lo;
  Bracket b = golden_section_max(func, lo, hi, 1e-6 * width);
  // Widen slightly so the derivative changes sign inside.
  double blo = std::max(lo, b.lo - 1e-6 * width);
  double bhi = std::min(hi, b.hi + 1e-6 * width);
  double candidate = 0.5 * (b.lo + b.hi);
  const double d_lo = dfunc(blo);
  const double d_hi = dfunc(bhi);
  if (d_lo > 0.0 && d_hi < 0.0) {
    candidate = bisect_oriented(dfunc, blo, bhi, true, tol);
  }
  const double f_candidate = func(candidate);
  if (func(hi) >= f_candidate) return hi;
  if (func(lo) >= f_candidate) return lo;
  return candidate;
}

}  // namespace polyflood::roots
