#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "meridian/error.hpp"
#include "meridian/jet.hpp"
#include "meridian/ode.hpp"

namespace meridian {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec3 axpy(const Vec3& a, double s, const Vec3& b) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }
inline Vec3 scale(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Position of l(v) and its first three derivatives.
struct CurveJet {
  Vec3 l{};
  Vec3 d1{};
  Vec3 d2{};
  Vec3 d3{};

  /// Component k (0..2) of l as a jet in v.
  Jet3 component(std::size_t k) const { return {l[k], d1[k], d2[k], d3[k]}; }
};

/// Frenet data of an arc-length curve on the unit sphere S^2 in span{e1,e2,e3}.
struct FrenetFrame {
  Vec3 l{};
  Vec3 t{};
  Vec3 n{};
};

/// Arc-length curve l(v) on S^2(1) with Frenet frame {l, t, n}, n = l x t,
/// and spherical curvature kappa = <t', n>.
class SphericalCurve {
 public:
  using JetEvaluator = std::function<CurveJet(double)>;

  SphericalCurve(JetEvaluator jets, Interval domain, std::string label, SmoothFn1 kappa = {})
      : jets_(std::move(jets)), domain_(domain), label_(std::move(label)), kappa_(std::move(kappa)) {}

  CurveJet jets(double v) const {
    check(v);
    return jets_(v);
  }

  FrenetFrame frame(double v) const {
    const CurveJet j = jets(v);
    return {j.l, j.d1, cross(j.l, j.d1)};
  }

  /// Spherical curvature as a jet in v. Curves built from explicit position
  /// jets derive kappa = <l'', l x l'> and kappa' = <l''', l x l'>; their
  /// second and third derivatives are NaN (not available).
  Jet3 curvature(double v) const {
    check(v);
    if (kappa_) return kappa_(v);
    const CurveJet j = jets_(v);
    const Vec3 n = cross(j.l, j.d1);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {dot(j.d2, n), dot(j.d3, n), nan, nan};
  }

  const Interval& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  bool contains(double v) const { return domain_.contains(v); }

  /// Great circle l(v) = cos v e1 + sin v e2, kappa = 0.
  static SphericalCurve great_circle() {
    return {[](double v) {
              const double c = std::cos(v), s = std::sin(v);
              return CurveJet{{c, s, 0.0}, {-s, c, 0.0}, {-c, -s, 0.0}, {s, -c, 0.0}};
            },
            Interval::real_line(), "great-circle"};
  }

  /// Circle at colatitude alpha in (0, pi), arc-length parametrized:
  /// l(v) = (sin a cos(v/sin a), sin a sin(v/sin a), cos a).
  static SphericalCurve latitude_circle(double alpha) {
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
      throw Error(Errc::InvalidCurve, "colatitude must lie in (0, pi)");
    const double s = std::sin(alpha), c = std::cos(alpha);
    std::ostringstream os;
    os << "latitude(alpha=" << alpha << ")";
    return {[s, c](double v) {
              const double w = v / s;
              const double cw = std::cos(w), sw = std::sin(w);
              return CurveJet{{s * cw, s * sw, c},
                              {-sw, cw, 0.0},
                              {-cw / s, -sw / s, 0.0},
                              {sw / (s * s), -cw / (s * s), 0.0}};
            },
            Interval::real_line(), os.str()};
  }

  /// Latitude circle whose spherical curvature is k (colatitude atan2(1, k)).
  static SphericalCurve with_constant_curvature(double k) {
    if (k == 0.0) return great_circle();
    return latitude_circle(std::atan2(1.0, k));
  }

  /// Curve with prescribed curvature kappa(v), obtained by integrating the
  /// Frenet system l' = t, t' = kappa n - l, n' = -kappa t from the frame
  /// {e1, e2, e3} at v0. The frame is re-orthonormalized after every step.
  static SphericalCurve from_curvature(const SmoothFn1& kappa, Interval v_range, double h);

  /// User-supplied position jets; the sphere, arc-length and Frenet closure
  /// invariants are validated on `samples` points at load time.
  static SphericalCurve from_jets(JetEvaluator jets, Interval domain, std::string label, SmoothFn1 kappa = {},
                                  int samples = 33);

  /// Max violation of the curve invariants over `samples` points of `range`:
  /// {sphere/arc-length, Frenet closure}.
  std::array<double, 2> invariant_violation(Interval range, int samples) const;

 private:
  void check(double v) const {
    if (!domain_.contains(v)) {
      std::ostringstream os;
      os << "v=" << v << " outside directrix domain " << domain_.describe();
      throw Error(Errc::OutOfDomain, os.str());
    }
  }

  JetEvaluator jets_;
  Interval domain_;
  std::string label_;
  SmoothFn1 kappa_;
};

namespace detail {

using FrenetState = std::array<double, 9>;

inline FrenetState pack(const FrenetFrame& f) {
  return {f.l[0], f.l[1], f.l[2], f.t[0], f.t[1], f.t[2], f.n[0], f.n[1], f.n[2]};
}

inline FrenetFrame unpack(const FrenetState& s) {
  return {{s[0], s[1], s[2]}, {s[3], s[4], s[5]}, {s[6], s[7], s[8]}};
}

inline FrenetFrame orthonormalize(FrenetFrame f) {
  auto normalize = [](Vec3 a) { return scale(1.0 / std::sqrt(dot(a, a)), a); };
  f.l = normalize(f.l);
  f.t = normalize(axpy(f.t, -dot(f.t, f.l), f.l));
  f.n = cross(f.l, f.t);
  return f;
}

/// Integrated Frenet frames on a uniform grid. The curve parameter is the
/// independent variable here, so the system is made autonomous by carrying v.
struct FrenetTable {
  SmoothFn1 kappa;
  double v0 = 0.0;
  double h = 0.0;
  std::vector<FrenetFrame> frames;

  static std::array<double, 10> rhs(const SmoothFn1& kappa, const std::array<double, 10>& y) {
    const double k = kappa(y[9]).value;
    std::array<double, 10> d{};
    for (int i = 0; i < 3; ++i) {
      d[i] = y[3 + i];                        // l' = t
      d[3 + i] = k * y[6 + i] - y[i];         // t' = kappa n - l
      d[6 + i] = -k * y[3 + i];               // n' = -kappa t
    }
    d[9] = 1.0;
    return d;
  }

  FrenetFrame advance(const FrenetFrame& f, double v, double dv) const {
    std::array<double, 10> y{};
    const FrenetState s = pack(f);
    std::copy(s.begin(), s.end(), y.begin());
    y[9] = v;
    auto r = rk4_step<10>([this](const std::array<double, 10>& z) { return rhs(kappa, z); }, y, dv);
    FrenetState out{};
    std::copy(r.begin(), r.begin() + 9, out.begin());
    return orthonormalize(unpack(out));
  }

  FrenetFrame at(double v) const {
    auto k = static_cast<std::size_t>(std::floor((v - v0) / h));
    k = std::min(k, frames.size() - 1);
    const double vk = v0 + h * static_cast<double>(k);
    const double dv = v - vk;
    if (dv == 0.0) return frames[k];
    return advance(frames[k], vk, dv);
  }
};

}  // namespace detail

inline SphericalCurve SphericalCurve::from_curvature(const SmoothFn1& kappa, Interval v_range, double h) {
  if (!(h > 0.0)) throw Error(Errc::StepSizeNonpositive, "Frenet step must be positive");
  if (v_range.empty()) throw Error(Errc::EmptyInterval, "empty directrix range");
  if (!kappa.domain().contains(v_range)) throw Error(Errc::InvalidCurve, "curvature not defined on directrix range");
  auto table = std::make_shared<detail::FrenetTable>();
  table->kappa = kappa;
  table->v0 = v_range.lo;
  const double span = v_range.hi - v_range.lo;
  const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / h - 1e-9)));
  table->h = span / static_cast<double>(steps);
  table->frames.reserve(steps + 1);
  table->frames.push_back({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  for (std::size_t k = 0; k < steps; ++k) {
    const double v = table->v0 + table->h * static_cast<double>(k);
    table->frames.push_back(table->advance(table->frames.back(), v, table->h));
  }
  auto jets = [table](double v) {
    const FrenetFrame f = table->at(v);
    const Jet3 k = table->kappa(v);
    CurveJet j;
    j.l = f.l;
    j.d1 = f.t;
    j.d2 = axpy(scale(k.value, f.n), -1.0, f.l);                                     // kappa n - l
    j.d3 = axpy(scale(k.d1, f.n), -(k.value * k.value + 1.0), f.t);                // kappa' n - (kappa^2 + 1) t
    return j;
  };
  std::ostringstream os;
  os << "frenet(" << (kappa.name().empty() ? "kappa" : kappa.name()) << ")";
  return {jets, Interval::closed_range(v_range.lo, v_range.hi), os.str(), kappa};
}

inline std::array<double, 2> SphericalCurve::invariant_violation(Interval range, int samples) const {
  double sphere = 0.0, frenet = 0.0;
  const double lo = std::isfinite(range.lo) ? range.lo : -10.0;
  const double hi = std::isfinite(range.hi) ? range.hi : 10.0;
  for (int i = 0; i < samples; ++i) {
    // interior points only, so open domains are respected
    const double v = lo + (hi - lo) * (i + 0.5) / samples;
    const CurveJet j = jets(v);
    const Jet3 k = curvature(v);
    sphere = std::max({sphere, std::abs(dot(j.l, j.l) - 1.0), std::abs(dot(j.d1, j.d1) - 1.0)});
    const Vec3 n = cross(j.l, j.d1);
    const Vec3 n_prime = cross(j.l, j.d2);  // (l x t)' = t x t + l x t'
    const Vec3 t_res = axpy(axpy(j.d2, -k.value, n), 1.0, j.l);   // t' - (kappa n - l)
    const Vec3 n_res = axpy(n_prime, k.value, j.d1);               // n' + kappa t
    frenet = std::max({frenet, std::sqrt(dot(t_res, t_res)), std::sqrt(dot(n_res, n_res))});
  }
  return {sphere, frenet};
}

inline SphericalCurve SphericalCurve::from_jets(JetEvaluator jets, Interval domain, std::string label,
                                                SmoothFn1 kappa, int samples) {
  SphericalCurve curve(std::move(jets), domain, std::move(label), std::move(kappa));
  const auto [sphere, frenet] = curve.invariant_violation(domain, samples);
  if (sphere > 1e-10 || frenet > 1e-8) {
    std::ostringstream os;
    os << "curve '" << curve.label() << "' violates S^2 arc-length (" << sphere << ") or Frenet closure (" << frenet
       << ")";
    throw Error(Errc::InvalidCurve, os.str());
  }
  return curve;
}

}  // namespace meridian
