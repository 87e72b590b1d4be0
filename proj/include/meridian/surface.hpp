#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "meridian/bijet.hpp"
#include "meridian/error.hpp"
#include "meridian/minkowski.hpp"
#include "meridian/profile.hpp"
#include "meridian/spherical_curve.hpp"

namespace meridian {

/// Meridian surface of elliptic type, z(u,v) = f(u) l(v) + g(u) e4.
class MeridianSurface {
 public:
  MeridianSurface(MeridianProfile profile, SphericalCurve directrix)
      : profile_(std::move(profile)), directrix_(std::move(directrix)) {}

  const MeridianProfile& profile() const { return profile_; }
  const SphericalCurve& directrix() const { return directrix_; }

  bool contains(double u, double v) const { return profile_.contains(u) && directrix_.contains(v); }

  void check(double u, double v) const {
    if (!contains(u, v)) {
      std::ostringstream os;
      os << "(u,v)=(" << u << ", " << v << ") outside " << profile_.domain().describe() << " x "
         << directrix_.domain().describe();
      throw Error(Errc::OutOfDomain, os.str());
    }
  }

 private:
  MeridianProfile profile_;
  SphericalCurve directrix_;
};

/// z and its partials through third order at one point.
struct SurfaceJet {
  Vec4M z, z_u, z_v;
  Vec4M z_uu, z_uv, z_vv;
  Vec4M z_uuu, z_uuv, z_uvv, z_vvv;
};

/// Orthonormal frame {X, Y; N1, N2} with Gram diag(-1, 1, 1, 1).
struct FrameAtPoint {
  Vec4M X, Y, N1, N2;
};

struct FirstForm {
  double E = 0.0, F = 0.0, G = 0.0;
};

/// Gauss curvature from the second fundamental form and from fddot / f.
struct GaussCurvature {
  double sigma_route = 0.0;
  double closed_form = 0.0;
};

/// Components of a normal vector along (N1, N2).
struct NormalPair {
  double n1 = 0.0, n2 = 0.0;
  double max_abs() const { return std::max(std::abs(n1), std::abs(n2)); }
};

struct MeanCurvature {
  NormalPair closed;  // kappa/(2f), -(1 + fdot^2 + f fddot)/(2 f gdot)
  NormalPair jet;     // -sigma(x, y) projected on N1, N2
};

/// (D_X xi, D_Y xi) for a normal field xi.
struct NormalDerivative {
  NormalPair dx, dy;
  double max_abs() const { return std::max(dx.max_abs(), dy.max_abs()); }
};

struct NormalDerivativeRoutes {
  NormalDerivative closed;
  NormalDerivative jet;
};

struct InvariantReport {
  double E = 0.0, F = 0.0, G = 0.0;
  double K = 0.0;         // sigma route
  double K_closed = 0.0;  // fddot / f
  double K_perp = 0.0;
  NormalPair H;           // jet route
  NormalPair H_closed;
  double H_norm_sq = 0.0;
  double K_minus_H2 = 0.0;
  int epsilon = 0;  // sign of K - <H,H>, 0 within tolerance
  CausalClass z_u_class = CausalClass::Zero;
  CausalClass z_v_class = CausalClass::Zero;
  CausalClass H_class = CausalClass::Zero;
};

namespace detail {

template <int N>
BiJet<N> inner(const VecField<N>& a, const VecField<N>& b) {
  return minkowski_inner(a, b);
}

template <int N>
VecField<N> spatial_cross(const VecField<N>& a, const VecField<N>& b) {
  VecField<N> r;
  r.x[0] = a.x[1] * b.x[2] - a.x[2] * b.x[1];
  r.x[1] = a.x[2] * b.x[0] - a.x[0] * b.x[2];
  r.x[2] = a.x[0] * b.x[1] - a.x[1] * b.x[0];
  r.x[3] = BiJet<N>(0.0);
  return r;
}

/// Every field the geometry needs at one point, as truncated Taylor
/// expansions in (u, v). Profile and directrix jets are order 3, so z is
/// exact to order 3 and the frame to order 2.
class SurfaceFields {
 public:
  SurfaceFields(const MeridianSurface& s, double u, double v) {
    s.check(u, v);
    f_jet = s.profile().f(u);
    g_jet = s.profile().g(u);
    kappa_jet = s.directrix().curvature(v);
    sign_g = s.profile().sign_g();
    const CurveJet cj = s.directrix().jets(v);

    f = BiJet<3>::from_u(f_jet);
    g = BiJet<3>::from_u(g_jet);
    for (std::size_t k = 0; k < 3; ++k) l.x[k] = BiJet<3>::from_v(cj.component(k));
    l.x[3] = BiJet<3>(0.0);
    VecField<3> e4_field = lift<3>(e4);
    z = f * l + g * e4_field;

    inv_f = recip(f.truncate<2>());
    X = du(z);
    Y = dv(z) * inv_f;
    const VecField<2> l2 = truncate<2>(l);
    N1 = spatial_cross(l2, dv(l));
    N2 = g.du() * l2 + f.du() * lift<2>(e4);
  }

  template <int M>
  VecField<M> along_X(const VecField<M + 1>& V) const {
    return du(V);
  }

  template <int M>
  VecField<M> along_Y(const VecField<M + 1>& V) const {
    return dv(V) * inv_f.template truncate<M>();
  }

  /// Derivative along the null vector x = (X + Y)/sqrt2.
  template <int M>
  VecField<M> along_x(const VecField<M + 1>& V) const {
    return (along_X<M>(V) + along_Y<M>(V)) * (1.0 / std::numbers::sqrt2);
  }

  /// Derivative along the null vector y = (X - Y)/sqrt2.
  template <int M>
  VecField<M> along_y(const VecField<M + 1>& V) const {
    return (along_X<M>(V) - along_Y<M>(V)) * (1.0 / std::numbers::sqrt2);
  }

  template <int M>
  VecField<M> normal_part(const VecField<M>& V) const {
    const VecField<M> n1 = truncate<M>(N1);
    const VecField<M> n2 = truncate<M>(N2);
    return inner(V, n1) * n1 + inner(V, n2) * n2;
  }

  template <int M>
  NormalPair components(const VecField<M>& V) const {
    return {inner(V, truncate<M>(N1)).value(), inner(V, truncate<M>(N2)).value()};
  }

  VecField<2> x() const { return (X + Y) * (1.0 / std::numbers::sqrt2); }
  VecField<2> y() const { return (X - Y) * (1.0 / std::numbers::sqrt2); }

  /// Mean curvature vector field H = -sigma(x, y).
  VecField<1> mean_curvature_field() const { return -normal_part<1>(along_x<1>(y())); }

  double metric_det() const {
    const Vec4M Xv = value(X), Yv = value(Y);
    const double xx = minkowski_inner(Xv, Xv), yy = minkowski_inner(Yv, Yv), xy = minkowski_inner(Xv, Yv);
    return xx * yy - xy * xy;
  }

  Jet3 f_jet, g_jet, kappa_jet;
  int sign_g = 1;
  BiJet<3> f, g;
  VecField<3> l;
  VecField<3> z;
  BiJet<2> inv_f;
  VecField<2> X, Y, N1, N2;
};

/// Closed-form scalar fields in (u, v) to first order.
struct ClosedScalars {
  BiJet<1> f, fdot, fddot, gdot, kappa, P;

  explicit ClosedScalars(const SurfaceFields& s)
      : f(BiJet<1>::from_u(s.f_jet)),
        fdot(BiJet<1>::from_u(s.f_jet.derivative())),
        fddot(BiJet<1>::from_u(s.f_jet.derivative().derivative())),
        gdot(BiJet<1>::from_u(s.g_jet.derivative())),
        kappa(BiJet<1>::from_v(s.kappa_jet)),
        P(BiJet<1>(1.0) + fdot * fdot + f * fddot) {}

  BiJet<1> h1() const { return kappa / (2.0 * f); }
  BiJet<1> h2() const { return -P / (2.0 * f * gdot); }
};

}  // namespace detail

inline SurfaceJet evaluate(const MeridianSurface& s, double u, double v) {
  const detail::SurfaceFields d(s, u, v);
  return {partial(d.z, 0, 0), partial(d.z, 1, 0), partial(d.z, 0, 1), partial(d.z, 2, 0), partial(d.z, 1, 1),
          partial(d.z, 0, 2), partial(d.z, 3, 0), partial(d.z, 2, 1), partial(d.z, 1, 2), partial(d.z, 0, 3)};
}

inline FrameAtPoint frame(const MeridianSurface& s, double u, double v) {
  const detail::SurfaceFields d(s, u, v);
  return {value(d.X), value(d.Y), value(d.N1), value(d.N2)};
}

/// (E, F, G) from inner products of z_u and z_v.
inline FirstForm first_form(const MeridianSurface& s, double u, double v) {
  const SurfaceJet j = evaluate(s, u, v);
  return {minkowski_inner(j.z_u, j.z_u), minkowski_inner(j.z_u, j.z_v), minkowski_inner(j.z_v, j.z_v)};
}

inline GaussCurvature gauss_curvature(const MeridianSurface& s, double u, double v) {
  const detail::SurfaceFields d(s, u, v);
  const Vec4M sxx = value(d.normal_part<1>(d.along_X<1>(d.X)));
  const Vec4M sxy = value(d.normal_part<1>(d.along_X<1>(d.Y)));
  const Vec4M syy = value(d.normal_part<1>(d.along_Y<1>(d.Y)));
  const double num = minkowski_inner(sxx, syy) - minkowski_inner(sxy, sxy);
  return {num / d.metric_det(), d.f_jet.d2 / d.f_jet.value};
}

/// Normal curvature <R^D(X,Y)N1, N2> / (<X,X><Y,Y> - <X,Y>^2) with
/// R^D(X,Y) = D_X D_Y - D_Y D_X - D_[X,Y].
inline double normal_curvature(const MeridianSurface& s, double u, double v) {
  const detail::SurfaceFields d(s, u, v);
  const VecField<1> dy_n1 = d.normal_part<1>(d.along_Y<1>(d.N1));
  const VecField<1> dx_n1 = d.normal_part<1>(d.along_X<1>(d.N1));
  const Vec4M dxdy = value(d.normal_part<0>(d.along_X<0>(dy_n1)));
  const Vec4M dydx = value(d.normal_part<0>(d.along_Y<0>(dx_n1)));
  // [X, Y] = X(1/f) d_v for X = d_u, Y = (1/f) d_v
  const double bracket_v = d.inv_f.du().value();
  const Vec4M d_bracket = bracket_v * value(d.normal_part<1>(dv(d.N1)));
  const Vec4M R = dxdy - dydx - d_bracket;
  return minkowski_inner(R, value(d.N2)) / d.metric_det();
}

inline MeanCurvature mean_curvature(const MeridianSurface& s, double u, double v) {
  const detail::SurfaceFields d(s, u, v);
  const detail::ClosedScalars c(d);
  return {{c.h1().value(), c.h2().value()}, d.components<1>(d.mean_curvature_field())};
}

inline NormalDerivativeRoutes normal_derivative_H(const MeridianSurface& s, double u, double v) {
  const detail::SurfaceFields d(s, u, v);
  const detail::ClosedScalars c(d);
  const double f = c.f.value();
  const double fdot = c.fdot.value();
  const double kappa = c.kappa.value();
  NormalDerivative closed;
  closed.dx = {-kappa * fdot / (2.0 * f * f), c.h2().du().value()};
  closed.dy = {c.kappa.dv().value() / (2.0 * f * f), 0.0};

  const VecField<1> H = d.mean_curvature_field();
  NormalDerivative jet;
  jet.dx = d.components<0>(d.normal_part<0>(d.along_X<0>(H)));
  jet.dy = d.components<0>(d.normal_part<0>(d.along_Y<0>(H)));
  return {closed, jet};
}

inline NormalDerivativeRoutes normal_derivative_H0(const MeridianSurface& s, double u, double v,
                                                   double tol = kCausalTol) {
  const detail::SurfaceFields d(s, u, v);
  const VecField<1> H = d.mean_curvature_field();
  const BiJet<1> hh = detail::inner(H, H);
  if (!(hh.value() > tol)) {
    std::ostringstream os;
    os << "<H,H>=" << hh.value() << " at (" << u << ", " << v << ")";
    throw Error(Errc::MinimalPoint, os.str());
  }
  const VecField<1> H0 = H * recip(sqrt(hh));
  NormalDerivative jet;
  jet.dx = d.components<0>(d.normal_part<0>(d.along_X<0>(H0)));
  jet.dy = d.components<0>(d.normal_part<0>(d.along_Y<0>(H0)));

  // H0 = (kappa |gdot| N1 - sgn(gdot) P N2) / sqrt(kappa^2 gdot^2 + P^2); N1, N2 are
  // parallel in the normal bundle, so D H0 only differentiates the weights.
  const detail::ClosedScalars c(d);
  const double sg = c.gdot.value() < 0.0 ? -1.0 : 1.0;
  const BiJet<1> A = c.kappa * (sg * c.gdot);
  const BiJet<1> B = sg * c.P;
  const BiJet<1> inv_norm = recip(sqrt(A * A + B * B));
  const BiJet<1> alpha = A * inv_norm;
  const BiJet<1> beta = -B * inv_norm;
  const double f = c.f.value();
  NormalDerivative closed;
  closed.dx = {alpha.du().value(), beta.du().value()};
  closed.dy = {alpha.dv().value() / f, beta.dv().value() / f};
  return {closed, jet};
}

inline InvariantReport invariant_report(const MeridianSurface& s, double u, double v, double tol = kCausalTol) {
  const detail::SurfaceFields d(s, u, v);
  const detail::ClosedScalars c(d);
  InvariantReport r;
  const Vec4M zu = partial(d.z, 1, 0), zv = partial(d.z, 0, 1);
  r.E = minkowski_inner(zu, zu);
  r.F = minkowski_inner(zu, zv);
  r.G = minkowski_inner(zv, zv);
  const GaussCurvature K = gauss_curvature(s, u, v);
  r.K = K.sigma_route;
  r.K_closed = K.closed_form;
  r.K_perp = normal_curvature(s, u, v);
  const VecField<1> H = d.mean_curvature_field();
  r.H = d.components<1>(H);
  r.H_closed = {c.h1().value(), c.h2().value()};
  const Vec4M Hv = value(H);
  r.H_norm_sq = minkowski_inner(Hv, Hv);
  r.K_minus_H2 = r.K - r.H_norm_sq;
  r.epsilon = r.K_minus_H2 > tol ? 1 : (r.K_minus_H2 < -tol ? -1 : 0);
  r.z_u_class = causal_character(zu, tol);
  r.z_v_class = causal_character(zv, tol);
  r.H_class = causal_character(Hv, tol);
  return r;
}

}  // namespace meridian
