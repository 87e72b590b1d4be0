#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "meridian/bijet.hpp"
#include "meridian/error.hpp"
#include "meridian/grid.hpp"
#include "meridian/jet.hpp"
#include "meridian/kappa.hpp"
#include "meridian/minkowski.hpp"
#include "meridian/quadrature.hpp"
#include "meridian/surface.hpp"

namespace meridian {

// ---------------------------------------------------------------------------
// isotropic chart

/// ubar = (U(u) + v)/sqrt2, vbar = (U(u) - v)/sqrt2 with U' = 1/f.
class IsotropicChart {
 public:
  /// U by quadrature of 1/f from u_ref.
  IsotropicChart(MeridianSurface surface, double u_ref)
      : surface_(std::move(surface)), method_("quadrature") {
    const MeridianProfile& p = surface_.profile();
    if (!p.contains(u_ref)) throw Error(Errc::ChartDomain, "chart reference point outside profile domain");
    U_ = [p, u_ref](double u) {
      return adaptive_simpson([&p](double s) { return 1.0 / p.f(s).value; }, u_ref, u, 1e-12);
    };
  }

  /// Closed-form U for profiles f = sqrt(-u^2 + 2au + b): U = asin((u - a)/sqrt(a^2 + b)).
  static IsotropicChart minimal_type(MeridianSurface surface, double a, double b) {
    const double r = std::sqrt(a * a + b);
    IsotropicChart c(std::move(surface));
    c.U_ = [a, r](double u) { return std::asin((u - a) / r); };
    c.method_ = "closed-form";
    return c;
  }

  const MeridianSurface& surface() const { return surface_; }
  const std::string& method() const { return method_; }

  void check(double u, double v) const {
    if (!surface_.contains(u, v)) {
      std::ostringstream os;
      os << "(u,v)=(" << u << ", " << v << ") outside chart " << surface_.profile().domain().describe() << " x "
         << surface_.directrix().domain().describe();
      throw Error(Errc::ChartDomain, os.str());
    }
  }

  double U(double u) const { return U_(u); }

  std::array<double, 2> to_barred(double u, double v) const {
    check(u, v);
    const double Uu = U_(u);
    return {(Uu + v) / std::numbers::sqrt2, (Uu - v) / std::numbers::sqrt2};
  }

  /// f and fdot at u.
  std::array<double, 2> profile_terms(double u) const {
    const Jet3 f = surface_.profile().f(u);
    return {f.value, f.d1};
  }

  /// d_ubar, d_vbar of a function with partials (phi_u, phi_v).
  std::array<double, 2> barred_gradient(double u, double phi_u, double phi_v) const {
    const double f = profile_terms(u)[0];
    return {(f * phi_u + phi_v) / std::numbers::sqrt2, (f * phi_u - phi_v) / std::numbers::sqrt2};
  }

  /// phi_{ubar vbar} = (f fdot phi_u + f^2 phi_uu - phi_vv)/2.
  double barred_mixed(double u, double phi_u, double phi_uu, double phi_vv) const {
    const auto [f, fd] = profile_terms(u);
    return 0.5 * (f * fd * phi_u + f * f * phi_uu - phi_vv);
  }

  /// (<z_ub, z_ub>, <z_ub, z_vb>, <z_vb, z_vb>) and the expected -f^2.
  struct MetricCheck {
    double E = 0.0, F = 0.0, G = 0.0;
    double expected_F = 0.0;
    double max_deviation() const { return std::max({std::abs(E), std::abs(F - expected_F), std::abs(G)}); }
  };

  MetricCheck metric(double u, double v) const {
    check(u, v);
    const SurfaceJet j = evaluate(surface_, u, v);
    const double f = profile_terms(u)[0];
    const Vec4M zub = (f * j.z_u + j.z_v) / std::numbers::sqrt2;
    const Vec4M zvb = (f * j.z_u - j.z_v) / std::numbers::sqrt2;
    return {minkowski_inner(zub, zub), minkowski_inner(zub, zvb), minkowski_inner(zvb, zvb), -f * f};
  }

  /// Applies d_ubar, d_vbar to ubar, vbar themselves; returns the max
  /// deviation from the identity pattern. U' is a central difference of U,
  /// so U is checked along with the operators.
  double chain_rule_selftest(double u, double v, double h = 1e-6) const {
    check(u, v);
    const double Up = (U_(u + h) - U_(u - h)) / (2.0 * h);
    // ubar_u = U'/sqrt2, ubar_v = 1/sqrt2; vbar_u = U'/sqrt2, vbar_v = -1/sqrt2
    const double s = 1.0 / std::numbers::sqrt2;
    const auto gu = barred_gradient(u, Up * s, s);
    const auto gv = barred_gradient(u, Up * s, -s);
    return std::max({std::abs(gu[0] - 1.0), std::abs(gu[1]), std::abs(gv[0]), std::abs(gv[1] - 1.0)});
  }

 private:
  explicit IsotropicChart(MeridianSurface surface) : surface_(std::move(surface)) {}

  MeridianSurface surface_;
  std::function<double(double)> U_;
  std::string method_;
};

// ---------------------------------------------------------------------------
// geometric frame and functions

struct IsotropicFrame {
  Vec4M x, y, n1, n2;
};

/// Gram target for {x, y, n1, n2}, row-major.
inline constexpr std::array<double, 16> kIsotropicGram{0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
/// Gram target for {X, Y, N1, N2}, row-major.
inline constexpr std::array<double, 16> kOrthonormalGram{-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

struct GeometricFunctions {
  double gamma1 = 0.0, gamma2 = 0.0, nu = 0.0;
  double lambda1 = 0.0, mu1 = 0.0, lambda2 = 0.0, mu2 = 0.0;
  double beta1 = 0.0, beta2 = 0.0;

  std::array<double, 9> as_array() const { return {gamma1, gamma2, nu, lambda1, mu1, lambda2, mu2, beta1, beta2}; }
  static constexpr std::array<const char*, 9> names{"gamma1", "gamma2", "nu",  "lambda1", "mu1",
                                                    "lambda2", "mu2",    "beta1", "beta2"};

  double max_abs_diff(const GeometricFunctions& o) const {
    const auto a = as_array(), b = o.as_array();
    double m = 0.0;
    for (std::size_t k = 0; k < 9; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
  }
};

namespace detail {

struct GeometricFields {
  VecField<2> x, y;
  VecField<1> n1, n2;
};

/// n1 = (A N1 - B N2)/D, n2 = (B N1 + A N2)/D with A = kappa |gdot|,
/// B = sgn(gdot) P, D = sqrt(A^2 + B^2). n1 points along H.
inline GeometricFields geometric_fields(const SurfaceFields& d, double u, double v, double tol) {
  const VecField<1> H = d.mean_curvature_field();
  const double hh = minkowski_inner(value(H), value(H));
  if (!(hh > tol)) {
    std::ostringstream os;
    os << "<H,H>=" << hh << " at (" << u << ", " << v << "); geometric frame undefined";
    throw Error(Errc::MinimalPoint, os.str());
  }
  const ClosedScalars c(d);
  const double sg = c.gdot.value() < 0.0 ? -1.0 : 1.0;
  const BiJet<1> A = c.kappa * (sg * c.gdot);
  const BiJet<1> B = sg * c.P;
  const BiJet<1> inv = recip(sqrt(A * A + B * B));
  const VecField<1> N1 = truncate<1>(d.N1), N2 = truncate<1>(d.N2);
  return {d.x(), d.y(), (A * inv) * N1 - (B * inv) * N2, (B * inv) * N1 + (A * inv) * N2};
}

}  // namespace detail

inline IsotropicFrame isotropic_frame(const MeridianSurface& s, double u, double v, double tol = kCausalTol) {
  const detail::SurfaceFields d(s, u, v);
  const detail::GeometricFields g = detail::geometric_fields(d, u, v, tol);
  return {value(g.x), value(g.y), value(g.n1), value(g.n2)};
}

inline FrameReport verify_isotropic_frame(const IsotropicFrame& f, double tol) {
  const std::array<LabeledVector, 4> v{{{"x", f.x}, {"y", f.y}, {"n1", f.n1}, {"n2", f.n2}}};
  return verify_frame(v, kIsotropicGram, tol);
}

inline FrameReport verify_orthonormal_frame(const FrameAtPoint& f, double tol) {
  const std::array<LabeledVector, 4> v{{{"X", f.X}, {"Y", f.Y}, {"N1", f.N1}, {"N2", f.N2}}};
  return verify_frame(v, kOrthonormalGram, tol);
}

/// Geometric functions by pairing ambient derivatives of the frame fields.
inline GeometricFunctions geometric_functions(const MeridianSurface& s, double u, double v, double tol = kCausalTol) {
  const detail::SurfaceFields d(s, u, v);
  const detail::GeometricFields g = detail::geometric_fields(d, u, v, tol);
  const Vec4M x = value(g.x), y = value(g.y), n1 = value(g.n1), n2 = value(g.n2);
  const Vec4M Dxx = value(d.along_x<1>(g.x));
  const Vec4M Dyy = value(d.along_y<1>(g.y));
  const Vec4M Dxy = value(d.along_x<1>(g.y));
  const Vec4M Dxn1 = value(d.along_x<0>(g.n1));
  const Vec4M Dyn1 = value(d.along_y<0>(g.n1));
  GeometricFunctions r;
  r.gamma1 = -minkowski_inner(Dxx, y);
  r.gamma2 = -minkowski_inner(Dyy, x);
  r.lambda1 = minkowski_inner(Dxx, n1);
  r.mu1 = minkowski_inner(Dxx, n2);
  r.nu = -minkowski_inner(Dxy, n1);
  r.lambda2 = minkowski_inner(Dyy, n1);
  r.mu2 = minkowski_inner(Dyy, n2);
  r.beta1 = minkowski_inner(Dxn1, n2);
  r.beta2 = minkowski_inner(Dyn1, n2);
  return r;
}

/// Closed forms for f = sqrt(-u^2 + 2au + b) with constant kappa; F = f^2.
/// nu = lambda = |kappa|/(2f), mu = -sgn(kappa) sqrt(a^2+b)/F,
/// gamma1 = gamma2 = (a - u)/(sqrt2 F).
inline GeometricFunctions closed_geometric_functions_pnmc1(double a, double b, double kappa, double u) {
  const double F = -u * u + 2.0 * a * u + b;
  if (!(F > 0.0)) {
    std::ostringstream os;
    os << "-u^2+2au+b = " << F << " at u=" << u;
    throw Error(Errc::OutOfDomain, os.str());
  }
  const double r = std::sqrt(a * a + b);
  const double lam = std::abs(kappa) / (2.0 * std::sqrt(F));
  const double mu = -(kappa < 0.0 ? -1.0 : 1.0) * r / F;
  const double gamma = (a - u) / (std::numbers::sqrt2 * F);
  return {gamma, gamma, lam, lam, mu, lam, mu, 0.0, 0.0};
}

/// Closed forms for the second parallel-normalized family, f from
/// fdot = (1/f) sqrt((c f + a)^2 - f^2); w = sqrt(fdot^2 + 1).
inline GeometricFunctions closed_geometric_functions_pnmc2(double c, double a, double kappa, const Jet3& f_jet) {
  (void)a;  // enters only through f
  if (kappa == 0.0 || c == 0.0 || kappa * kappa == c * c)
    throw Error(Errc::ParameterConflict, "needs kappa != 0, c != 0, kappa^2 != c^2");
  const double f = f_jet.value, fd = f_jet.d1;
  const double w = std::sqrt(fd * fd + 1.0);
  const double s = std::sqrt(kappa * kappa + c * c);
  const double gamma = fd / (std::numbers::sqrt2 * f);
  const double lam = (kappa * kappa - c * c + 2.0 * c * w) / (2.0 * f * s);
  const double mu = kappa * (c - w) / (f * s);
  return {gamma, gamma, s / (2.0 * f), lam, mu, lam, mu, 0.0, 0.0};
}

// ---------------------------------------------------------------------------
// scalar fields and residuals

/// Value and partials through second order at one point.
struct FieldSample {
  double value = 0.0, u = 0.0, v = 0.0, uu = 0.0, uv = 0.0, vv = 0.0;
};

struct Rect {
  Interval u, v;
  bool contains(double uu, double vv) const { return u.contains(uu) && v.contains(vv); }
};

/// Scalar field of (u, v) with analytic partials, audited against central
/// differences when constructed.
class ScalarField2 {
 public:
  using Evaluator = std::function<FieldSample(double, double)>;

  static constexpr double kAuditTol = 1e-5;

  ScalarField2(Evaluator eval, Rect domain, std::string name, bool audit = true)
      : eval_(std::move(eval)), domain_(domain), name_(std::move(name)) {
    if (audit) run_audit();
  }

  /// Field given as an order-2 bivariate jet at each point.
  static ScalarField2 from_jet(std::function<BiJet<2>(double, double)> jet, Rect domain, std::string name) {
    return {[jet](double u, double v) {
              const BiJet<2> j = jet(u, v);
              return FieldSample{j.value(), j.partial(1, 0), j.partial(0, 1),
                                 j.partial(2, 0), j.partial(1, 1), j.partial(0, 2)};
            },
            domain, std::move(name)};
  }

  static ScalarField2 constant(double c, std::string name = "const") {
    return {[c](double, double) { return FieldSample{c}; }, {Interval::real_line(), Interval::real_line()},
            std::move(name), false};
  }

  FieldSample operator()(double u, double v) const {
    if (!domain_.contains(u, v)) {
      std::ostringstream os;
      os << name_ << " evaluated at (" << u << ", " << v << ") outside " << domain_.u.describe() << " x "
         << domain_.v.describe();
      throw Error(Errc::OutOfDomain, os.str());
    }
    return eval_(u, v);
  }

  const Rect& domain() const { return domain_; }
  const std::string& name() const { return name_; }

  /// Max relative mismatch of the supplied partials against central
  /// differences over a 5x5 interior sample.
  double audit_error() const {
    auto span = [](const Interval& I) {
      double lo = std::isfinite(I.lo) ? I.lo : -1.0, hi = std::isfinite(I.hi) ? I.hi : 1.0;
      const double m = 0.1 * (hi - lo);
      return std::array<double, 2>{lo + m, hi - m};
    };
    const auto [ul, uh] = span(domain_.u);
    const auto [vl, vh] = span(domain_.v);
    const double h = 1e-5 * std::max({1.0, std::abs(uh - ul), std::abs(vh - vl)});
    double worst = 0.0;
    auto rel = [&worst](double analytic, double fd) {
      worst = std::max(worst, std::abs(analytic - fd) / std::max(1.0, std::abs(analytic)));
    };
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double u = ul + (uh - ul) * i / 4.0, v = vl + (vh - vl) * j / 4.0;
        const FieldSample c = eval_(u, v);
        const FieldSample up = eval_(u + h, v), um = eval_(u - h, v);
        const FieldSample vp = eval_(u, v + h), vm = eval_(u, v - h);
        rel(c.u, (up.value - um.value) / (2 * h));
        rel(c.v, (vp.value - vm.value) / (2 * h));
        rel(c.uu, (up.u - um.u) / (2 * h));
        rel(c.uv, (vp.u - vm.u) / (2 * h));
        rel(c.vv, (vp.v - vm.v) / (2 * h));
      }
    return worst;
  }

 private:
  void run_audit() const {
    const double e = audit_error();
    if (!(e <= kAuditTol)) {
      std::ostringstream os;
      os << "partials of " << name_ << " disagree with finite differences (" << e << ")";
      throw Error(Errc::FieldAuditFailed, os.str());
    }
  }

  Evaluator eval_;
  Rect domain_;
  std::string name_;
};

/// Candidate (lambda, mu, nu).
struct FieldTriple {
  ScalarField2 lambda, mu, nu;
};

struct EquationResidual {
  std::string equation;
  double max_abs = 0.0;
  double rms = 0.0;
  double worst_u = 0.0, worst_v = 0.0;
};

struct ResidualReport {
  std::string system;
  std::vector<EquationResidual> equations;
  Grid2 grid;
  int epsilon = 0;  // 0 where the system has no epsilon
  double tol = 0.0;
  bool pass = false;
};

/// |mu| below this is treated as vanishing.
inline constexpr double kMuFloor = 1e-12;

namespace detail {

/// Partials of L = ln|mu|.
struct LogMu {
  double abs_mu, u, v, uu, uv, vv;
};

inline LogMu log_mu(const FieldSample& m, double u, double v) {
  if (!(std::abs(m.value) > kMuFloor)) {
    std::ostringstream os;
    os << "|mu| = " << std::abs(m.value) << " at (" << u << ", " << v << ")";
    throw Error(Errc::MuVanishes, os.str());
  }
  const double q = 1.0 / m.value;
  return {std::abs(m.value),         m.u * q,
          m.v * q,                   m.uu * q - m.u * m.u * q * q,
          m.uv * q - m.u * m.v * q * q, m.vv * q - m.v * m.v * q * q};
}

template <std::size_t R, class PointFn>
ResidualReport sweep(std::string system, const std::array<const char*, R>& names, const Grid2& g, double tol,
                     const PointFn& residuals) {
  g.validate();
  std::vector<std::array<double, R>> vals(g.size());
  parallel_for(g.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k / static_cast<std::size_t>(g.nv)), j = static_cast<int>(k % static_cast<std::size_t>(g.nv));
    vals[k] = residuals(g.u(i), g.v(j));
  });
  ResidualReport r;
  r.system = std::move(system);
  r.grid = g;
  r.tol = tol;
  r.pass = true;
  for (std::size_t e = 0; e < R; ++e) {
    EquationResidual row;
    row.equation = names[e];
    double sq = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      double a = std::abs(vals[k][e]);
      if (std::isnan(a)) a = std::numeric_limits<double>::infinity();
      sq += a * a;
      if (k == 0 || a > row.max_abs) {
        row.max_abs = a;
        row.worst_u = g.u(static_cast<int>(k / static_cast<std::size_t>(g.nv)));
        row.worst_v = g.v(static_cast<int>(k % static_cast<std::size_t>(g.nv)));
      }
    }
    row.rms = std::sqrt(sq / static_cast<double>(vals.size()));
    r.pass = r.pass && row.max_abs <= tol;
    r.equations.push_back(std::move(row));
  }
  return r;
}

}  // namespace detail

/// nu_u + lambda_v - lambda L_v; lambda_u - eps nu_v - lambda L_u;
/// |mu| L_uv + nu^2 + eps (lambda^2 + mu^2), with L = ln|mu|.
inline ResidualReport residual_fund(const FieldTriple& t, int epsilon, const Grid2& g, double tol) {
  if (epsilon != 1 && epsilon != -1) throw Error(Errc::ConfigError, "epsilon must be +1 or -1");
  const double eps = epsilon;
  auto r = detail::sweep<3>("fund", {"nu_u+lambda_v-lambda*L_v", "lambda_u-eps*nu_v-lambda*L_u",
                                     "|mu|*L_uv+nu^2+eps*(lambda^2+mu^2)"},
                            g, tol, [&](double u, double v) {
                              const FieldSample l = t.lambda(u, v), m = t.mu(u, v), n = t.nu(u, v);
                              const detail::LogMu L = detail::log_mu(m, u, v);
                              return std::array<double, 3>{
                                  n.u + l.v - l.value * L.v, l.u - eps * n.v - l.value * L.u,
                                  L.abs_mu * L.uv + n.value * n.value + eps * (l.value * l.value + m.value * m.value)};
                            });
  r.epsilon = epsilon;
  return r;
}

/// nu_u + lambda_v - lambda L_v; |mu| L_uv + nu^2; plus nu_v (nu must not
/// depend on v). All three rows count toward pass.
inline ResidualReport residual_degenerate(const FieldTriple& t, const Grid2& g, double tol) {
  return detail::sweep<3>("degenerate", {"nu_u+lambda_v-lambda*L_v", "|mu|*L_uv+nu^2", "nu_v"}, g, tol,
                          [&](double u, double v) {
                            const FieldSample l = t.lambda(u, v), m = t.mu(u, v), n = t.nu(u, v);
                            const detail::LogMu L = detail::log_mu(m, u, v);
                            return std::array<double, 3>{n.u + l.v - l.value * L.v,
                                                         L.abs_mu * L.uv + n.value * n.value, n.v};
                          });
}

/// The eps = -1 system in barred coordinates:
/// nu_ub + lambda_vb - lambda L_vb; lambda_ub + nu_vb - lambda L_ub;
/// |mu| L_ubvb - (lambda^2 + mu^2 - nu^2). Barred partials come from the
/// chain rule in (u, v); the chart is never inverted.
inline ResidualReport residual_syst1(const FieldTriple& t, const IsotropicChart& chart, const Grid2& g, double tol) {
  g.validate();
  for (double u : {g.u_min, g.u_max})
    for (double v : {g.v_min, g.v_max}) chart.check(u, v);
  auto r = detail::sweep<3>(
      "syst1", {"nu_ub+lambda_vb-lambda*L_vb", "lambda_ub+nu_vb-lambda*L_ub", "|mu|*L_ubvb-(lambda^2+mu^2-nu^2)"}, g,
      tol, [&](double u, double v) {
        const FieldSample l = t.lambda(u, v), m = t.mu(u, v), n = t.nu(u, v);
        const detail::LogMu L = detail::log_mu(m, u, v);
        const auto lb = chart.barred_gradient(u, l.u, l.v);
        const auto nb = chart.barred_gradient(u, n.u, n.v);
        const auto Lb = chart.barred_gradient(u, L.u, L.v);
        const double L_mixed = chart.barred_mixed(u, L.u, L.uu, L.vv);
        return std::array<double, 3>{
            nb[0] + lb[1] - l.value * Lb[1], lb[0] + nb[1] - l.value * Lb[0],
            L.abs_mu * L_mixed - (l.value * l.value + m.value * m.value - n.value * n.value)};
      });
  r.epsilon = -1;
  return r;
}

/// lambda = nu = kappa(v) / (2 sqrt(F)), mu = -sqrt(a^2+b)/F, F = -u^2 + 2au + b.
inline FieldTriple solution_family(double a, double b, const SmoothFn1& kappa) {
  const double r2 = a * a + b;
  if (!(r2 > 0.0)) throw Error(Errc::EmptyInterval, "a^2 + b must be positive");
  const double r = std::sqrt(r2);
  const Rect rect{Interval::open(a - r, a + r), kappa.domain()};
  auto F = [a, b](double u) {
    const Jet3 x = Jet3::variable(u);
    return -1.0 * x * x + 2.0 * a * x + b;
  };
  auto lam = [F, kappa](double u, double v) {
    return BiJet<2>::from_v(kappa(v)) * BiJet<2>::from_u(0.5 * pow(F(u), -0.5));
  };
  auto mu = [F, r](double u, double) { return BiJet<2>::from_u(-r * recip(F(u))); };
  std::ostringstream os;
  os << "(a=" << a << ",b=" << b << "," << kappa.name() << ")";
  return {ScalarField2::from_jet(lam, rect, "lambda" + os.str()), ScalarField2::from_jet(mu, rect, "mu" + os.str()),
          ScalarField2::from_jet(lam, rect, "nu" + os.str())};
}

/// Surface and closed-form chart the solution family comes from: f as in
/// the minimal family, directrix with curvature kappa(v) over v_range.
inline IsotropicChart solution_chart(double a, double b, const SmoothFn1& kappa, Interval v_range, double h = 1e-3) {
  const double r = std::sqrt(a * a + b);
  if (!(a * a + b > 0.0)) throw Error(Errc::EmptyInterval, "a^2 + b must be positive");
  auto f = [a, b](double u) {
    const Jet3 x = Jet3::variable(u);
    return sqrt(-1.0 * x * x + 2.0 * a * x + b);
  };
  auto g = [a, r](double u) { return r * asin((Jet3::variable(u) - a) / r); };
  MeridianProfile p(f, MeridianProfile::JetFn(g), Interval::open(a - r, a + r), 1, "family");
  return IsotropicChart::minimal_type({std::move(p), SphericalCurve::from_curvature(kappa, v_range, h)}, a, b);
}

/// lambda = nu = 0, mu = exp(u) (2 + sin v): separable, so (ln|mu|)_uv = 0.
inline FieldTriple separable_solution() {
  const Rect all{Interval::real_line(), Interval::real_line()};
  auto mu = [](double u, double v) {
    return BiJet<2>::from_u(exp(Jet3::variable(u))) * BiJet<2>::from_v(2.0 + sin(Jet3::variable(v)));
  };
  return {ScalarField2::constant(0.0, "lambda"), ScalarField2::from_jet(mu, all, "mu=exp(u)(2+sin v)"),
          ScalarField2::constant(0.0, "nu")};
}

}  // namespace meridian
