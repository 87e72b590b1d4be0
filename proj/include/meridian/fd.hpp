#pragma once

#include <algorithm>
#include <cmath>

#include "meridian/error.hpp"
#include "meridian/jet.hpp"

namespace meridian {

/// Central-difference audit of a jet at u.
///
/// Order k of the jet is compared against the central difference of order
/// k-1, i.e. d1 ~ (F(u+h)-F(u-h))/2h, d2 ~ (F'(u+h)-F'(u-h))/2h, and so on.
/// Returns max_k |jet_k - fd_k| / (1 + |jet_k|).
inline double fd_check(const SmoothFn1& fn, double u, double h) {
  if (!(h > 0.0)) throw Error(Errc::StepSizeNonpositive, "fd_check step must be positive");
  if (!fn.domain().contains(u - 2.0 * h) || !fn.domain().contains(u + 2.0 * h))
    throw Error(Errc::DomainViolation, "fd_check stencil leaves the domain");
  const Jet3 c = fn(u);
  const Jet3 p = fn(u + h);
  const Jet3 m = fn(u - h);
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double fd = (p[k - 1] - m[k - 1]) / (2.0 * h);
    worst = std::max(worst, std::abs(c[k] - fd) / (1.0 + std::abs(c[k])));
  }
  return worst;
}

}  // namespace meridian
