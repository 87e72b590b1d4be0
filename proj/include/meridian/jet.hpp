#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "meridian/error.hpp"

namespace meridian {

/// Value and first three derivatives of a scalar function at a point.
///
/// Arithmetic follows the Leibniz rule for products and Faa di Bruno's
/// formula for composition, truncated at order three.
struct Jet3 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
  static constexpr Jet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }

  /// Jet of the derivative. The third derivative of the result is unknown.
  constexpr Jet3 derivative() const {
    return {d1, d2, d3, std::numeric_limits<double>::quiet_NaN()};
  }

  constexpr double operator[](int k) const {
    switch (k) {
      case 0: return value;
      case 1: return d1;
      case 2: return d2;
      default: return d3;
    }
  }

  friend constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
  }
  friend constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
  }
  friend constexpr Jet3 operator-(const Jet3& a) { return {-a.value, -a.d1, -a.d2, -a.d3}; }
  friend constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
            a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
            a.d3 * b.value + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.value * b.d3};
  }
  friend constexpr Jet3 operator*(double s, const Jet3& a) { return {s * a.value, s * a.d1, s * a.d2, s * a.d3}; }
  friend constexpr Jet3 operator*(const Jet3& a, double s) { return s * a; }
  friend constexpr Jet3 operator+(const Jet3& a, double s) { return {a.value + s, a.d1, a.d2, a.d3}; }
  friend constexpr Jet3 operator+(double s, const Jet3& a) { return a + s; }
  friend constexpr Jet3 operator-(const Jet3& a, double s) { return {a.value - s, a.d1, a.d2, a.d3}; }
  friend constexpr Jet3 operator-(double s, const Jet3& a) { return {s - a.value, -a.d1, -a.d2, -a.d3}; }
  friend constexpr Jet3 operator/(const Jet3& a, double s) { return (1.0 / s) * a; }
};

/// Composes an outer function with derivatives (F, F', F'', F''') taken at
/// g.value onto the inner jet g.
constexpr Jet3 compose(const Jet3& g, double F0, double F1, double F2, double F3) {
  const double g1 = g.d1, g2 = g.d2, g3 = g.d3;
  return {F0, F1 * g1, F2 * g1 * g1 + F1 * g2, F3 * g1 * g1 * g1 + 3.0 * F2 * g1 * g2 + F1 * g3};
}

inline Jet3 recip(const Jet3& a) {
  const double x = a.value;
  const double r = 1.0 / x;
  return compose(a, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * recip(b); }
inline Jet3 operator/(double s, const Jet3& b) { return s * recip(b); }

inline Jet3 sqrt(const Jet3& a) {
  const double x = a.value;
  const double s = std::sqrt(x);
  return compose(a, s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x));
}

inline Jet3 pow(const Jet3& a, double p) {
  const double x = a.value;
  return compose(a, std::pow(x, p), p * std::pow(x, p - 1.0), p * (p - 1.0) * std::pow(x, p - 2.0),
                 p * (p - 1.0) * (p - 2.0) * std::pow(x, p - 3.0));
}

inline Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.value);
  return compose(a, e, e, e, e);
}

inline Jet3 log(const Jet3& a) {
  const double x = a.value;
  return compose(a, std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

inline Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return compose(a, s, c, -s, -c);
}

inline Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return compose(a, c, -s, -c, s);
}

inline Jet3 sinh(const Jet3& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return compose(a, s, c, s, c);
}

inline Jet3 cosh(const Jet3& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return compose(a, c, s, c, s);
}

inline Jet3 asin(const Jet3& a) {
  const double x = a.value;
  const double q = 1.0 - x * x;  // asin' = q^{-1/2}
  const double r = 1.0 / std::sqrt(q);
  return compose(a, std::asin(x), r, x * r / q, (1.0 + 2.0 * x * x) * r / (q * q));
}

/// Sign-folded absolute value; not differentiable at zero.
inline Jet3 abs(const Jet3& a) { return a.value < 0.0 ? -a : a; }

/// Real interval used as a validity domain. `closed` selects [lo, hi]
/// instead of the default open (lo, hi).
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool closed = false;

  static Interval open(double lo, double hi) { return {lo, hi, false}; }
  static Interval closed_range(double lo, double hi) { return {lo, hi, true}; }
  static Interval real_line() { return {}; }

  bool contains(double x) const { return closed ? (lo <= x && x <= hi) : (lo < x && x < hi); }
  bool contains(const Interval& other) const {
    if (closed || !other.closed) {
      return lo <= other.lo && other.hi <= hi;
    }
    return lo < other.lo && other.hi < hi;
  }
  bool empty() const { return closed ? !(lo <= hi) : !(lo < hi); }
  double width() const { return hi - lo; }

  std::string describe() const {
    std::ostringstream os;
    os << (closed ? '[' : '(') << lo << ", " << hi << (closed ? ']' : ')');
    return os.str();
  }
};

/// A scalar function of one variable that evaluates to a Jet3, together
/// with the interval on which it is valid.
class SmoothFn1 {
 public:
  using Evaluator = std::function<Jet3(double)>;

  SmoothFn1() = default;
  SmoothFn1(Evaluator eval, Interval domain, std::string name = {})
      : eval_(std::move(eval)), domain_(domain), name_(std::move(name)) {}

  Jet3 operator()(double x) const {
    if (!domain_.contains(x)) {
      std::ostringstream os;
      os << (name_.empty() ? "function" : name_) << " evaluated at " << x << " outside " << domain_.describe();
      throw Error(Errc::DomainViolation, os.str());
    }
    return eval_(x);
  }

  const Interval& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  explicit operator bool() const { return static_cast<bool>(eval_); }

  static SmoothFn1 constant(double c, Interval domain = Interval::real_line()) {
    return {[c](double) { return Jet3::constant(c); }, domain, "const"};
  }

 private:
  Evaluator eval_;
  Interval domain_;
  std::string name_;
};

}  // namespace meridian
