#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "meridian/error.hpp"
#include "meridian/grid.hpp"
#include "meridian/jet.hpp"
#include "meridian/kappa.hpp"
#include "meridian/ode.hpp"
#include "meridian/profile.hpp"
#include "meridian/quadrature.hpp"
#include "meridian/spherical_curve.hpp"
#include "meridian/surface.hpp"

namespace meridian {

enum class FamilyTag { Flat, ConstantK, Minimal, CMC, ParallelH1, ParallelH2, PNMC1, PNMC2 };

constexpr std::string_view to_string(FamilyTag t) noexcept {
  switch (t) {
    case FamilyTag::Flat: return "Flat";
    case FamilyTag::ConstantK: return "ConstantK";
    case FamilyTag::Minimal: return "Minimal";
    case FamilyTag::CMC: return "CMC";
    case FamilyTag::ParallelH1: return "ParallelH1";
    case FamilyTag::ParallelH2: return "ParallelH2";
    case FamilyTag::PNMC1: return "PNMC1";
    case FamilyTag::PNMC2: return "PNMC2";
  }
  return "Unknown";
}

inline FamilyTag parse_family_tag(std::string_view s) {
  for (auto t : {FamilyTag::Flat, FamilyTag::ConstantK, FamilyTag::Minimal, FamilyTag::CMC, FamilyTag::ParallelH1,
                 FamilyTag::ParallelH2, FamilyTag::PNMC1, FamilyTag::PNMC2})
    if (to_string(t) == s) return t;
  throw Error(Errc::ConfigError, "unknown family tag '" + std::string(s) + "'");
}

/// Parameters of one family instance. Only the fields a tag uses are read:
///   Flat        a, b, c, sign_g, [u_min, u_max]
///   ConstantK   K, a1, a2, sign_g, [u_min, u_max]
///   Minimal     a, b, c, sign_g, optional sub-interval
///   CMC         a (= |H|), b (= kappa), c, f0, sign_phi, inner_sign, sign_g, [u_min, u_max], h
///   ParallelH1  a, c, f0, sign_phi, sign_g, [u_min, u_max], h
///   ParallelH2  a, b, sign_g, kappa
///   PNMC1       a, b, c, sign_g, kappa
///   PNMC2       a, c, kappa, f0, sign_phi, sign_g, [u_min, u_max], h
struct FamilySpec {
  FamilyTag tag = FamilyTag::Flat;
  double a = 0.0, b = 0.0, c = 0.0;
  double K = 0.0, a1 = 1.0, a2 = 0.0;
  double kappa = 0.0;
  double f0 = 1.0;
  int sign_g = 1;
  int sign_phi = 1;
  int inner_sign = 1;
  std::optional<double> u_min, u_max;
  double h = 1e-3;
  std::string directrix;  // empty: the tag's default
};

namespace detail {

inline std::string fmt_label(std::string_view name, std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os << name << '(';
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : ",") << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

inline int unit_sign(int s, const char* what) {
  if (s != 1 && s != -1) throw Error(Errc::ConfigError, std::string(what) + " must be +1 or -1");
  return s;
}

inline void require_finite_interval(const Interval& I) {
  if (I.empty()) throw Error(Errc::EmptyInterval, "empty u-interval " + I.describe());
  if (!std::isfinite(I.lo) || !std::isfinite(I.hi)) throw Error(Errc::ConfigError, "u-interval must be finite");
}

/// f > 0 on I, checked on a dense sample (endpoints included for closed I).
inline void require_positive(const std::function<double(double)>& f, const Interval& I, const std::string& label) {
  constexpr int n = 1000;
  for (int i = 0; i <= n; ++i) {
    double u = I.lo + (I.hi - I.lo) * i / n;
    if (!I.closed && (i == 0 || i == n)) continue;
    if (!(f(u) > 0.0)) {
      std::ostringstream os;
      os << label << ": f(" << u << ")=" << f(u) << " not positive on " << I.describe();
      throw Error(Errc::NonpositiveProfile, os.str());
    }
  }
}

/// Profile over an integrated f; g is accumulated by Simpson's rule per step
/// from |gdot| = sqrt(1 + phi(f)^2) with g(u_start) = 0.
inline MeridianProfile profile_from_ode(OdeSolution solution, int sign_g, std::string label) {
  auto sol = std::make_shared<const OdeSolution>(std::move(solution));
  auto speed = [sol](double f) {
    const double p = sol->phi()(f).value;
    return std::sqrt(1.0 + p * p);
  };
  auto nodes = std::make_shared<std::vector<double>>();
  nodes->reserve(sol->size());
  nodes->push_back(0.0);
  for (std::size_t k = 0; k + 1 < sol->size(); ++k) {
    const double ua = sol->node_u(k), ub = sol->node_u(k + 1);
    const double fm = sol->value_at(0.5 * (ua + ub));
    nodes->push_back(nodes->back() + (ub - ua) / 6.0 *
                                         (speed(sol->node_value(k)) + 4.0 * speed(fm) + speed(sol->node_value(k + 1))));
  }
  auto g_value = [sol, nodes, speed, sign_g](double u) {
    auto k = static_cast<std::size_t>(std::floor((u - sol->u_start()) / sol->step()));
    k = std::min(k, sol->size() - 1);
    const double uk = sol->node_u(k);
    double acc = (*nodes)[k];
    if (u > uk) {
      const double fm = sol->value_at(0.5 * (uk + u)), fu = sol->value_at(u);
      acc += (u - uk) / 6.0 * (speed(sol->node_value(k)) + 4.0 * speed(fm) + speed(fu));
    }
    return sign_g * acc;
  };
  MeridianProfile p([sol](double u) { return sol->jet_at(u); }, MeridianProfile::ValueFn(g_value), sol->domain(),
                    sign_g, std::move(label));
  if (sol->stopped_early()) {
    std::ostringstream os;
    os << "integration stopped (" << to_string(sol->stop_reason()) << ") at u=" << sol->u_end() << " before "
       << sol->requested_end() << ": " << sol->note();
    p.with_integration_note(os.str());
  }
  return p;
}

inline void require_radicand(double value, const std::string& what) {
  if (!(value > 0.0)) {
    std::ostringstream os;
    os << what << " radicand " << value << " not positive at f0";
    throw Error(Errc::RadicandNegative, os.str());
  }
}

/// Generating function whose radicand must stay positive; evaluation past
/// that point is a domain violation (ends ODE integration early).
inline SmoothFn1 guarded_phi(std::function<Jet3(double)> radicand, std::function<Jet3(const Jet3&, double)> finish,
                             Interval domain, std::string name) {
  return {[radicand, finish, name](double t) {
            const Jet3 r = radicand(t);
            if (!(r.value > 0.0)) {
              std::ostringstream os;
              os << name << " radicand " << r.value << " at t=" << t;
              throw Error(Errc::DomainViolation, os.str());
            }
            return finish(r, t);
          },
          domain, std::move(name)};
}

}  // namespace detail

/// f = a u + b, g = s sqrt(a^2 + 1) u + c.
inline MeridianProfile make_flat(double a, double b, double c, int sign_g, Interval I) {
  detail::unit_sign(sign_g, "sign_g");
  detail::require_finite_interval(I);
  const std::string label = detail::fmt_label("Flat", {{"a", a}, {"b", b}, {"c", c}});
  detail::require_positive([a, b](double u) { return a * u + b; }, I, label);
  const double gd = sign_g * std::sqrt(a * a + 1.0);
  return {[a, b](double u) { return Jet3{a * u + b, a, 0.0, 0.0}; },
          MeridianProfile::JetFn([gd, c](double u) { return Jet3{gd * u + c, gd, 0.0, 0.0}; }), I, sign_g, label};
}

/// f = a1 cos(w u) + a2 sin(w u), w = sqrt(-K) (K < 0), or
/// f = a1 cosh(w u) + a2 sinh(w u), w = sqrt(K) (K > 0). g(I.lo) = 0.
inline MeridianProfile make_constant_K(double K, double a1, double a2, int sign_g, Interval I) {
  detail::unit_sign(sign_g, "sign_g");
  if (K == 0.0) throw Error(Errc::ParameterConflict, "ConstantK needs K != 0 (use Flat)");
  detail::require_finite_interval(I);
  const double w = std::sqrt(std::abs(K));
  std::function<Jet3(double)> f;
  if (K < 0.0)
    f = [w, a1, a2](double u) {
      const Jet3 x = w * Jet3::variable(u);
      return a1 * cos(x) + a2 * sin(x);
    };
  else
    f = [w, a1, a2](double u) {
      const Jet3 x = w * Jet3::variable(u);
      return a1 * cosh(x) + a2 * sinh(x);
    };
  const std::string label = detail::fmt_label("ConstantK", {{"K", K}, {"a1", a1}, {"a2", a2}});
  detail::require_positive([f](double u) { return f(u).value; }, I, label);
  const double u0 = I.lo;
  auto g = [f, u0, sign_g](double u) {
    const auto speed = [&f](double s) {
      const double d = f(s).d1;
      return std::sqrt(1.0 + d * d);
    };
    return sign_g * adaptive_simpson(speed, u0, u, 1e-12);
  };
  return {f, MeridianProfile::ValueFn(g), I, sign_g, label};
}

namespace detail {

inline MeridianProfile minimal_type(std::string_view name, double a, double b, double c, int sign_g,
                                    std::optional<Interval> sub) {
  unit_sign(sign_g, "sign_g");
  const double r2 = a * a + b;
  if (!(r2 > 0.0)) throw Error(Errc::EmptyInterval, "a^2 + b must be positive");
  const double r = std::sqrt(r2);
  const Interval maximal = Interval::open(a - r, a + r);
  Interval I = maximal;
  if (sub) {
    if (sub->empty()) throw Error(Errc::EmptyInterval, "empty u-interval " + sub->describe());
    if (!maximal.contains(*sub)) {
      std::ostringstream os;
      os << "-u^2+2au+b not positive on " << sub->describe() << " (maximal " << maximal.describe() << ")";
      throw Error(Errc::NonpositiveProfile, os.str());
    }
    I = *sub;
  }
  auto f = [a, b](double u) {
    const Jet3 x = Jet3::variable(u);
    return sqrt(-1.0 * x * x + 2.0 * a * x + b);
  };
  auto g = [a, r, c, sign_g](double u) { return sign_g * (r * asin((Jet3::variable(u) - a) / r)) + c; };
  return {f, MeridianProfile::JetFn(g), I, sign_g, fmt_label(name, {{"a", a}, {"b", b}, {"c", c}})};
}

}  // namespace detail

/// f = sqrt(-u^2 + 2au + b), g = s sqrt(a^2+b) asin((u-a)/sqrt(a^2+b)) + c,
/// on (a - r, a + r) or the given sub-interval of it.
inline MeridianProfile make_minimal(double a, double b, double c, int sign_g, std::optional<Interval> sub = {}) {
  return detail::minimal_type("Minimal", a, b, c, sign_g, sub);
}

/// Same profile as make_minimal; paired with a curved directrix.
inline MeridianProfile make_pnmc1(double a, double b, double c, int sign_g, std::optional<Interval> sub = {}) {
  return detail::minimal_type("PNMC1", a, b, c, sign_g, sub);
}

/// Branch choice for the CMC generating function.
struct CmcBranch {
  int outer = 1;  // sign in front of the square root
  int inner = 1;  // +1: c + (t/2)R - (b^2/4a) ln(..); -1: c - (t/2)R + (b^2/4a) ln(..)
};

/// phi(t) = outer sqrt(Q^2/t^2 - 1), Q = c + inner[(t/2)R - (b^2/4a) ln(2at + R)],
/// R = sqrt(4a^2t^2 - b^2). a = |H| > 0, b = kappa != 0.
inline SmoothFn1 cmc_generator(double aH, double bk, double c, CmcBranch br) {
  const double t_min = std::abs(bk) / (2.0 * aH);
  auto Q = [aH, bk, c, br](double t) {
    const Jet3 x = Jet3::variable(t);
    const Jet3 R = sqrt(4.0 * aH * aH * x * x - bk * bk);
    return c + br.inner * (0.5 * x * R - (bk * bk / (4.0 * aH)) * log(2.0 * aH * x + R));
  };
  auto radicand = [Q](double t) {
    const Jet3 q = Q(t);
    const Jet3 x = Jet3::variable(t);
    return q * q / (x * x) - 1.0;
  };
  return detail::guarded_phi(radicand, [br](const Jet3& r, double) { return br.outer * sqrt(r); },
                             Interval::open(t_min, std::numeric_limits<double>::infinity()), "phi_cmc");
}

inline MeridianProfile make_cmc(double aH, double bk, double c, double f0, CmcBranch br, int sign_g, Interval I,
                                double h) {
  detail::unit_sign(br.outer, "outer sign");
  detail::unit_sign(br.inner, "inner sign");
  detail::unit_sign(sign_g, "sign_g");
  if (!(aH > 0.0)) throw Error(Errc::ParameterConflict, "CMC requires |H| = a > 0");
  if (bk == 0.0) throw Error(Errc::ParameterConflict, "CMC requires kappa = b != 0 (kappa = 0 is not covered)");
  detail::require_finite_interval(I);
  detail::require_radicand(4.0 * aH * aH * f0 * f0 - bk * bk, "4a^2 f0^2 - b^2");
  const SmoothFn1 phi = cmc_generator(aH, bk, c, br);
  {
    const double t = f0, R = std::sqrt(4.0 * aH * aH * t * t - bk * bk);
    const double q = c + br.inner * (0.5 * t * R - (bk * bk / (4.0 * aH)) * std::log(2.0 * aH * t + R));
    detail::require_radicand(q * q / (t * t) - 1.0, "phi");
  }
  return detail::profile_from_ode(integrate_profile(phi, f0, Interval::closed_range(I.lo, I.hi), h), sign_g,
                                  detail::fmt_label("CMC", {{"a", aH}, {"b", bk}, {"c", c}, {"f0", f0}}));
}

/// phi(t) = s (1/t) sqrt(Q(t)^2 - t^2) for a polynomial Q.
inline SmoothFn1 quotient_generator(std::function<Jet3(const Jet3&)> Q, int s, std::string name) {
  auto radicand = [Q](double t) {
    const Jet3 x = Jet3::variable(t);
    const Jet3 q = Q(x);
    return q * q - x * x;
  };
  return detail::guarded_phi(radicand, [s](const Jet3& r, double t) { return s * (sqrt(r) / Jet3::variable(t)); },
                             Interval::open(0.0, std::numeric_limits<double>::infinity()), std::move(name));
}

/// Parallel H, zero spherical curvature: Q(t) = c + a t^2.
inline MeridianProfile make_parallel_H1(double a, double c, double f0, int sign_phi, int sign_g, Interval I,
                                        double h) {
  detail::unit_sign(sign_phi, "sign_phi");
  detail::unit_sign(sign_g, "sign_g");
  if (a == 0.0) throw Error(Errc::ParameterConflict, "ParallelH1 requires a != 0");
  if (!(f0 > 0.0)) throw Error(Errc::NonpositiveProfile, "f0 must be positive");
  detail::require_finite_interval(I);
  detail::require_radicand((c + a * f0 * f0) * (c + a * f0 * f0) - f0 * f0, "(c + a f0^2)^2 - f0^2");
  const SmoothFn1 phi = quotient_generator([a, c](const Jet3& t) { return c + a * t * t; }, sign_phi, "phi_H1");
  return detail::profile_from_ode(integrate_profile(phi, f0, Interval::closed_range(I.lo, I.hi), h), sign_g,
                                  detail::fmt_label("ParallelH1", {{"a", a}, {"c", c}, {"f0", f0}}));
}

/// f = a, g = s u + b on the whole line.
inline MeridianProfile make_parallel_H2(double a, double b, int sign_g) {
  detail::unit_sign(sign_g, "sign_g");
  if (!(a > 0.0)) throw Error(Errc::NonpositiveProfile, "ParallelH2 requires a > 0");
  const double s = sign_g;
  return {[a](double) { return Jet3::constant(a); },
          MeridianProfile::JetFn([s, b](double u) { return Jet3{s * u + b, s, 0.0, 0.0}; }), Interval::real_line(),
          sign_g, detail::fmt_label("ParallelH2", {{"a", a}, {"b", b}})};
}

/// Parallel normalized H, constant curvature directrix: Q(t) = c t + a.
inline MeridianProfile make_pnmc2(double a, double c, double kappa, double f0, int sign_phi, int sign_g, Interval I,
                                  double h) {
  detail::unit_sign(sign_phi, "sign_phi");
  detail::unit_sign(sign_g, "sign_g");
  if (c == 0.0) throw Error(Errc::ParameterConflict, "PNMC2 requires c != 0");
  if (kappa == 0.0) throw Error(Errc::ParameterConflict, "PNMC2 requires kappa != 0");
  if (kappa * kappa == c * c) throw Error(Errc::ParameterConflict, "PNMC2 requires kappa^2 != c^2");
  if (!(f0 > 0.0)) throw Error(Errc::NonpositiveProfile, "f0 must be positive");
  detail::require_finite_interval(I);
  detail::require_radicand((c * f0 + a) * (c * f0 + a) - f0 * f0, "(c f0 + a)^2 - f0^2");
  const SmoothFn1 phi = quotient_generator([a, c](const Jet3& t) { return c * t + a; }, sign_phi, "phi_PNMC2");
  return detail::profile_from_ode(integrate_profile(phi, f0, Interval::closed_range(I.lo, I.hi), h), sign_g,
                                  detail::fmt_label("PNMC2", {{"a", a}, {"c", c}, {"kappa", kappa}, {"f0", f0}}));
}

// ---------------------------------------------------------------------------
// FamilySpec dispatch

inline std::optional<Interval> spec_interval(const FamilySpec& s) {
  if (s.u_min.has_value() != s.u_max.has_value())
    throw Error(Errc::ConfigError, "u_min and u_max must be given together");
  if (!s.u_min) return std::nullopt;
  return Interval::closed_range(*s.u_min, *s.u_max);
}

/// Families that need a finite interval use [0, 1] when none is given.
inline Interval spec_interval_or_unit(const FamilySpec& s) {
  return spec_interval(s).value_or(Interval::closed_range(0.0, 1.0));
}

inline MeridianProfile make_profile(const FamilySpec& s) {
  switch (s.tag) {
    case FamilyTag::Flat: return make_flat(s.a, s.b, s.c, s.sign_g, spec_interval_or_unit(s));
    case FamilyTag::ConstantK: return make_constant_K(s.K, s.a1, s.a2, s.sign_g, spec_interval_or_unit(s));
    case FamilyTag::Minimal: return make_minimal(s.a, s.b, s.c, s.sign_g, spec_interval(s));
    case FamilyTag::CMC:
      return make_cmc(s.a, s.b, s.c, s.f0, {s.sign_phi, s.inner_sign}, s.sign_g, spec_interval_or_unit(s), s.h);
    case FamilyTag::ParallelH1:
      return make_parallel_H1(s.a, s.c, s.f0, s.sign_phi, s.sign_g, spec_interval_or_unit(s), s.h);
    case FamilyTag::ParallelH2: return make_parallel_H2(s.a, s.b, s.sign_g);
    case FamilyTag::PNMC1: return make_pnmc1(s.a, s.b, s.c, s.sign_g, spec_interval(s));
    case FamilyTag::PNMC2:
      return make_pnmc2(s.a, s.c, s.kappa, s.f0, s.sign_phi, s.sign_g, spec_interval_or_unit(s), s.h);
  }
  throw Error(Errc::ConfigError, "unhandled family tag");
}

/// Directrix the family pairs with by default, unless one is given explicitly.
inline std::string directrix_selector(const FamilySpec& s) {
  if (!s.directrix.empty()) return s.directrix;
  auto circle = [](double k) {
    if (k == 0.0) return std::string("great-circle");
    std::ostringstream os;
    os << "latitude:" << k;
    return os.str();
  };
  switch (s.tag) {
    case FamilyTag::Minimal:
    case FamilyTag::ParallelH1: return "great-circle";
    case FamilyTag::CMC: return circle(s.b);
    default: return circle(s.kappa);
  }
}

inline MeridianSurface make_surface(const FamilySpec& s, Interval v_range = Interval::closed_range(0.0, 6.3)) {
  return {make_profile(s), make_directrix(directrix_selector(s), v_range)};
}

// ---------------------------------------------------------------------------
// verification

enum class Property { ZeroGauss, ConstantGauss, Minimal, ConstantMeanNorm, ParallelMean, ParallelNormalizedMean };

constexpr std::string_view to_string(Property p) noexcept {
  switch (p) {
    case Property::ZeroGauss: return "K==0";
    case Property::ConstantGauss: return "K==const";
    case Property::Minimal: return "H==0";
    case Property::ConstantMeanNorm: return "|H|==const";
    case Property::ParallelMean: return "DH==0";
    case Property::ParallelNormalizedMean: return "DH0==0 && DH!=0";
  }
  return "?";
}

/// Lower bound on max |D_X H| that counts as "H not parallel".
inline constexpr double kNonParallelWitness = 0.01;

struct FamilyVerdict {
  std::string property;
  double max_violation = 0.0;
  double tol = 0.0;
  bool pass = false;
  Grid2 grid;
  std::optional<double> witness;  // max |D_X H| for the PNMC property
  std::string note;
};

struct GridMax {
  double value = 0.0;
  double u = 0.0, v = 0.0;
};

/// max over the grid of fn(u, v); NaN counts as +inf.
template <class Fn>
GridMax grid_max(const Grid2& g, const Fn& fn) {
  g.validate();
  std::vector<double> vals(g.size());
  parallel_for(g.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k / static_cast<std::size_t>(g.nv)), j = static_cast<int>(k % static_cast<std::size_t>(g.nv));
    const double x = fn(g.u(i), g.v(j));
    vals[k] = std::isnan(x) ? std::numeric_limits<double>::infinity() : x;
  });
  GridMax best{-std::numeric_limits<double>::infinity(), g.u(0), g.v(0)};
  for (std::size_t k = 0; k < vals.size(); ++k)
    if (vals[k] > best.value) {
      best.value = vals[k];
      best.u = g.u(static_cast<int>(k / static_cast<std::size_t>(g.nv)));
      best.v = g.v(static_cast<int>(k % static_cast<std::size_t>(g.nv)));
    }
  return best;
}

inline void require_grid_inside(const MeridianSurface& s, const Grid2& g) {
  g.validate();
  for (double u : {g.u_min, g.u_max})
    for (double v : {g.v_min, g.v_max}) s.check(u, v);
}

inline double mean_norm(const MeridianSurface& s, double u, double v) {
  const NormalPair h = mean_curvature(s, u, v).jet;
  return std::hypot(h.n1, h.n2);
}

/// Checks one property on the grid. `target` is the constant for
/// ConstantGauss and ConstantMeanNorm.
inline FamilyVerdict verify_property(const MeridianSurface& s, Property p, double target, const Grid2& g, double tol) {
  require_grid_inside(s, g);
  FamilyVerdict r;
  r.property = std::string(to_string(p));
  r.tol = tol;
  r.grid = g;
  GridMax m;
  switch (p) {
    case Property::ZeroGauss:
      m = grid_max(g, [&](double u, double v) { return std::abs(gauss_curvature(s, u, v).sigma_route); });
      break;
    case Property::ConstantGauss:
      m = grid_max(g, [&](double u, double v) { return std::abs(gauss_curvature(s, u, v).sigma_route - target); });
      break;
    case Property::Minimal: m = grid_max(g, [&](double u, double v) { return mean_norm(s, u, v); }); break;
    case Property::ConstantMeanNorm:
      m = grid_max(g, [&](double u, double v) { return std::abs(mean_norm(s, u, v) - target); });
      break;
    case Property::ParallelMean:
      m = grid_max(g, [&](double u, double v) { return normal_derivative_H(s, u, v).jet.max_abs(); });
      break;
    case Property::ParallelNormalizedMean:
      m = grid_max(g, [&](double u, double v) {
        try {
          return normal_derivative_H0(s, u, v).jet.max_abs();
        } catch (const Error& e) {
          if (e.code() != Errc::MinimalPoint) throw;
          return std::numeric_limits<double>::infinity();
        }
      });
      r.witness = grid_max(g, [&](double u, double v) { return normal_derivative_H(s, u, v).jet.dx.max_abs(); }).value;
      break;
  }
  r.max_violation = m.value;
  r.pass = m.value <= tol && (!r.witness || *r.witness >= kNonParallelWitness);
  std::ostringstream os;
  os << "worst at (u,v)=(" << m.u << ", " << m.v << ")";
  if (r.witness && *r.witness < kNonParallelWitness) os << "; max |D_X H| = " << *r.witness << " (H is parallel)";
  if (std::isinf(m.value) && p == Property::ParallelNormalizedMean) os << "; H vanishes on the grid";
  if (const auto& n = s.profile().integration_note()) os << "; " << *n;
  r.note = os.str();
  return r;
}

inline Property family_property(FamilyTag t) {
  switch (t) {
    case FamilyTag::Flat: return Property::ZeroGauss;
    case FamilyTag::ConstantK: return Property::ConstantGauss;
    case FamilyTag::Minimal: return Property::Minimal;
    case FamilyTag::CMC: return Property::ConstantMeanNorm;
    case FamilyTag::ParallelH1:
    case FamilyTag::ParallelH2: return Property::ParallelMean;
    case FamilyTag::PNMC1:
    case FamilyTag::PNMC2: return Property::ParallelNormalizedMean;
  }
  return Property::ZeroGauss;
}

/// Evaluates the defining property of spec.tag on the surface.
inline FamilyVerdict verify_family(const MeridianSurface& s, const FamilySpec& spec, const Grid2& g, double tol) {
  const double target = spec.tag == FamilyTag::ConstantK ? spec.K : spec.tag == FamilyTag::CMC ? spec.a : 0.0;
  return verify_property(s, family_property(spec.tag), target, g, tol);
}

/// Grid strictly inside the profile domain (10% margin for open domains)
/// over v in [v_min, v_max].
inline Grid2 default_grid(const MeridianSurface& s, int nu = 50, int nv = 50, double v_min = 0.0, double v_max = 6.0) {
  Interval I = s.profile().domain();
  if (!std::isfinite(I.lo) || !std::isfinite(I.hi)) I = Interval::closed_range(-1.0, 1.0);
  double lo = I.lo, hi = I.hi;
  if (!I.closed) {
    const double m = 0.1 * (hi - lo);
    lo += m;
    hi -= m;
  }
  return {lo, hi, nu, v_min, v_max, nv};
}

}  // namespace meridian
