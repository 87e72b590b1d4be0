#pragma once

#include <cmath>
#include <sstream>

#include "meridian/error.hpp"
#include "meridian/jet.hpp"

namespace meridian {

namespace detail {

template <class F>
double simpson_step(const F& fn, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth, int max_depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = fn(lm), frm = fn(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= max_depth) {
    std::ostringstream os;
    os << "adaptive Simpson did not converge on [" << a << ", " << b << "]";
    throw Error(Errc::ToleranceNotReached, os.str());
  }
  return simpson_step(fn, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_step(fn, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

inline constexpr int kQuadratureMaxDepth = 48;

/// Adaptive Simpson integral of a plain callable over [a, b].
template <class F>
double adaptive_simpson(const F& fn, double a, double b, double tol, int max_depth = kQuadratureMaxDepth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = fn(a), fb = fn(b), fm = fn(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(fn, a, fa, b, fb, m, fm, whole, tol, 0, max_depth);
}

/// Integral of fn over [a, b]; the closed interval must lie inside fn's domain.
inline double quadrature(const SmoothFn1& fn, double a, double b, double tol) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  if (!fn.domain().contains(lo) || !fn.domain().contains(hi)) {
    std::ostringstream os;
    os << "[" << lo << ", " << hi << "] not inside " << fn.domain().describe();
    throw Error(Errc::IntervalOutsideDomain, os.str());
  }
  return adaptive_simpson([&fn](double x) { return fn(x).value; }, a, b, tol);
}

}  // namespace meridian
