#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "meridian/families.hpp"
#include "meridian/kappa.hpp"
#include "meridian/natural_pde.hpp"
#include "meridian/selfcheck.hpp"
#include "meridian/surface.hpp"

using namespace meridian;

namespace {

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no meridian::Error thrown";
  return Errc::ConfigError;
}

// Spherical curvature from positions only: t and t' by central differences.
double fd_frenet_curvature(const SphericalCurve& c, double v, double h = 1e-4) {
  auto pos = [&](double s) { return c.jets(s).l; };
  auto tangent = [&](double s) {
    const Vec3 p = pos(s + h), m = pos(s - h);
    return Vec3{(p[0] - m[0]) / (2 * h), (p[1] - m[1]) / (2 * h), (p[2] - m[2]) / (2 * h)};
  };
  const Vec3 tp = tangent(v + h), tm = tangent(v - h), t = tangent(v);
  const Vec3 dt{(tp[0] - tm[0]) / (2 * h), (tp[1] - tm[1]) / (2 * h), (tp[2] - tm[2]) / (2 * h)};
  return dot(dt, cross(pos(v), t));
}

MeridianSurface minimal01() { return {make_minimal(0, 1, 0, 1), SphericalCurve::great_circle()}; }
MeridianSurface flat01() {
  return {make_flat(0, 1, 0, 1, Interval::closed_range(-1, 1)), SphericalCurve::great_circle()};
}

}  // namespace

// --- directrix curves ------------------------------------------------------

TEST(SphericalCurve, GreatCircleHasZeroCurvature) {
  const auto c = SphericalCurve::great_circle();
  for (double v : {0.0, 1.0, 2.5}) {
    EXPECT_EQ(c.curvature(v).value, 0.0);
    EXPECT_NEAR(fd_frenet_curvature(c, v), 0.0, 1e-7);
  }
}

TEST(SphericalCurve, LatitudeCurvatureMatchesFiniteDifferenceOracle) {
  for (double alpha : {0.3, 1.0, 2.0}) {
    const auto c = SphericalCurve::latitude_circle(alpha);
    for (double v : {0.0, 0.7, 3.1}) EXPECT_NEAR(c.curvature(v).value, fd_frenet_curvature(c, v), 1e-6) << alpha;
  }
  for (double k : {-2.0, 0.5, 3.0})
    EXPECT_NEAR(fd_frenet_curvature(SphericalCurve::with_constant_curvature(k), 0.4), k, 1e-6);
}

TEST(SphericalCurve, BuiltinInvariants) {
  for (const auto& c : {SphericalCurve::great_circle(), SphericalCurve::latitude_circle(0.8)}) {
    const auto viol = c.invariant_violation(Interval::closed_range(0, 6), 40);
    EXPECT_LE(viol[0], 1e-14);
    EXPECT_LE(viol[1], 1e-13);
  }
}

TEST(SphericalCurve, FromCurvatureReproducesLatitudeCircleCurvature) {
  const auto c = SphericalCurve::from_curvature(kappa_constant(2.0), Interval::closed_range(0, 6.3), 1e-3);
  for (double v : {0.5, 2.0, 6.0}) {
    EXPECT_NEAR(c.curvature(v).value, 2.0, 1e-12);
    EXPECT_NEAR(fd_frenet_curvature(c, v), 2.0, 1e-6);
  }
  const auto viol = c.invariant_violation(Interval::closed_range(0, 6.3), 64);
  EXPECT_LE(viol[0], 1e-10);
  EXPECT_LE(viol[1], 1e-8);
}

TEST(SphericalCurve, FromCurvatureNonconstant) {
  const auto c = make_directrix("frenet:sin-offset:2", Interval::closed_range(0, 6.3));
  for (double v : {0.5, 2.0, 5.0}) EXPECT_NEAR(fd_frenet_curvature(c, v), 2.0 + std::sin(v), 1e-6) << v;
}

TEST(SphericalCurve, InvalidCurves) {
  EXPECT_EQ(code_of([] { SphericalCurve::latitude_circle(0.0); }), Errc::InvalidCurve);
  EXPECT_EQ(code_of([] { SphericalCurve::latitude_circle(std::numbers::pi); }), Errc::InvalidCurve);
  // Off the unit sphere.
  EXPECT_EQ(code_of([] {
              SphericalCurve::from_jets(
                  [](double v) {
                    const double c = std::cos(v), s = std::sin(v);
                    return CurveJet{{2 * c, 2 * s, 0}, {-2 * s, 2 * c, 0}, {-2 * c, -2 * s, 0}, {2 * s, -2 * c, 0}};
                  },
                  Interval::closed_range(0, 1), "big");
            }),
            Errc::InvalidCurve);
}

TEST(SphericalCurve, OutOfDomain) {
  const auto c = SphericalCurve::from_curvature(kappa_constant(1.0), Interval::closed_range(0, 1), 1e-2);
  EXPECT_EQ(code_of([&] { c.jets(2.0); }), Errc::OutOfDomain);
}

// --- evaluate / frame / first form ----------------------------------------

TEST(Evaluate, FlatProfileAtOrigin) {
  const SurfaceJet j = evaluate(flat01(), 0.0, 0.0);
  EXPECT_LE(max_abs(j.z - e1), 1e-15);
  EXPECT_LE(max_abs(j.z_v - e2), 1e-15);
  EXPECT_LE(max_abs(j.z_u - e4), 1e-15);
}

TEST(Evaluate, MinimalSecondDerivativeAtZero) {
  const auto s = minimal01();
  for (double v : {0.0, 1.3}) {
    const SurfaceJet j = evaluate(s, 0.0, v);
    const Vec4M l{{std::cos(v), std::sin(v), 0.0, 0.0}};
    EXPECT_LE(max_abs(j.z_uu + l), 1e-14);
  }
}

TEST(Evaluate, OutOfDomain) {
  EXPECT_EQ(code_of([] { evaluate(minimal01(), 1.0, 0.0); }), Errc::OutOfDomain);
  EXPECT_EQ(code_of([] { first_form(flat01(), 2.0, 0.0); }), Errc::OutOfDomain);
}

TEST(Frame, FlatNormalIsPosition) {
  const auto s = flat01();
  for (double v : {0.0, 2.0}) {
    const FrameAtPoint f = frame(s, 0.3, v);
    const Vec4M l{{std::cos(v), std::sin(v), 0.0, 0.0}};
    EXPECT_LE(max_abs(f.N2 - l), 1e-15);
    EXPECT_DOUBLE_EQ(minkowski_inner(f.X, f.X), -1.0);
  }
}

TEST(FirstForm, Examples) {
  const FirstForm a = first_form(flat01(), 0.2, 0.4);
  EXPECT_NEAR(a.E, -1.0, 1e-15);
  EXPECT_NEAR(a.F, 0.0, 1e-15);
  EXPECT_NEAR(a.G, 1.0, 1e-15);
  EXPECT_NEAR(first_form(minimal01(), 0.5, 1.0).G, 0.75, 1e-14);
}

// --- curvatures -----------------------------------------------------------

TEST(GaussCurvature, Examples) {
  EXPECT_NEAR(gauss_curvature(flat01(), 0.3, 1.0).sigma_route, 0.0, 1e-14);
  const MeridianSurface cosh_s{make_constant_K(1, 1, 0, 1, Interval::closed_range(-1, 1)),
                               SphericalCurve::great_circle()};
  for (double u : {-0.5, 0.0, 0.9}) EXPECT_NEAR(gauss_curvature(cosh_s, u, 0.2).sigma_route, 1.0, 1e-12);
  const GaussCurvature k = gauss_curvature(minimal01(), 0.5, 0.0);
  EXPECT_NEAR(k.sigma_route, -16.0 / 9.0, 1e-12);
  EXPECT_NEAR(k.closed_form, -16.0 / 9.0, 1e-12);
}

TEST(NormalCurvature, VanishesOnFamilies) {
  for (const auto& in : reference_instances(10))
    for (double v : {0.0, 2.0})
      EXPECT_LE(std::abs(normal_curvature(in.surface, 0.5 * (in.grid.u_min + in.grid.u_max), v)), 1e-10) << in.name;
}

TEST(MeanCurvature, MinimalIsZero) {
  const MeanCurvature h = mean_curvature(minimal01(), 0.3, 1.0);
  EXPECT_LE(h.closed.max_abs(), 1e-14);
  EXPECT_LE(h.jet.max_abs(), 1e-13);
}

TEST(MeanCurvature, ParallelH2Values) {
  const MeridianSurface s{make_parallel_H2(2, 0, 1), SphericalCurve::with_constant_curvature(3)};
  const MeanCurvature h = mean_curvature(s, 0.4, 1.0);
  EXPECT_NEAR(h.closed.n1, 0.75, 1e-14);
  EXPECT_NEAR(h.closed.n2, -0.25, 1e-14);
  EXPECT_NEAR(h.jet.n1, 0.75, 1e-12);
  EXPECT_NEAR(h.jet.n2, -0.25, 1e-12);
  EXPECT_NEAR(invariant_report(s, 0.4, 1.0).H_norm_sq, 10.0 / 16.0, 1e-12);
}

TEST(MeanCurvature, Pnmc1AtZero) {
  const MeridianSurface s{make_pnmc1(0, 1, 0, 1), SphericalCurve::with_constant_curvature(2)};
  const MeanCurvature h = mean_curvature(s, 0.0, 0.5);
  EXPECT_NEAR(h.jet.n1, 1.0, 1e-12);
  EXPECT_NEAR(h.jet.n2, 0.0, 1e-12);
}

TEST(NormalDerivativeH, ParallelCasesVanish) {
  const MeridianSurface p2{make_parallel_H2(2, 0, 1), SphericalCurve::with_constant_curvature(3)};
  EXPECT_LE(normal_derivative_H(p2, 0.1, 0.2).jet.max_abs(), 1e-12);
  EXPECT_LE(normal_derivative_H(minimal01(), 0.1, 0.2).jet.max_abs(), 1e-12);
}

TEST(NormalDerivativeH, Pnmc1ClosedValue) {
  const MeridianSurface s{make_pnmc1(0, 1, 0, 1), SphericalCurve::with_constant_curvature(2)};
  const NormalDerivativeRoutes d = normal_derivative_H(s, 0.5, 0.3);
  const double expected = 4.0 / (3.0 * std::sqrt(3.0));  // -kappa fdot/(2 f^2), fdot = -u/sqrt(1-u^2)
  EXPECT_NEAR(d.closed.dx.n1, expected, 1e-12);
  EXPECT_NEAR(d.jet.dx.n1, expected, 1e-10);
  EXPECT_NEAR(d.jet.dy.max_abs(), 0.0, 1e-10);
}

TEST(NormalDerivativeH0, Pnmc2Vanishes) {
  FamilySpec sp;
  sp.tag = FamilyTag::PNMC2;
  sp.a = 1, sp.c = 2, sp.kappa = 1, sp.f0 = 1;
  const auto s = make_surface(sp);
  for (double u : {0.1, 0.5, 0.9}) EXPECT_LE(normal_derivative_H0(s, u, 1.0).jet.max_abs(), 1e-8) << u;
}

TEST(NormalDerivativeH0, ParallelH1Vanishes) {
  FamilySpec sp;
  sp.tag = FamilyTag::ParallelH1;
  sp.a = 1, sp.c = 0, sp.f0 = std::cosh(0.1);
  const auto s = make_surface(sp);
  EXPECT_LE(normal_derivative_H0(s, 0.5, 1.0).jet.max_abs(), 1e-8);
}

TEST(NormalDerivativeH0, NonconstantKappaBreaksParallelism) {
  const MeridianSurface s{make_flat(0, 1, 0, 1, Interval::closed_range(0, 1)),
                          make_directrix("frenet:sin-offset:2", Interval::closed_range(0, 6.3))};
  EXPECT_GT(normal_derivative_H0(s, 0.5, 0.0).jet.dy.max_abs(), 1e-3);
}

TEST(NormalDerivativeH0, MinimalPointThrows) {
  EXPECT_EQ(code_of([] { normal_derivative_H0(minimal01(), 0.2, 0.0); }), Errc::MinimalPoint);
}

TEST(InvariantReport, Pnmc1HasNegativeEpsilon) {
  const MeridianSurface s{make_pnmc1(0, 1, 0, 1), SphericalCurve::with_constant_curvature(2)};
  for (double u : {-0.5, 0.0, 0.6}) {
    const InvariantReport r = invariant_report(s, u, 1.0);
    EXPECT_LT(r.K_minus_H2, 0.0);
    EXPECT_EQ(r.epsilon, -1);
  }
}

TEST(InvariantReport, FlatAndCosh) {
  const InvariantReport f = invariant_report(flat01(), 0.5, 0.5);
  EXPECT_NEAR(f.K, 0.0, 1e-14);
  EXPECT_NEAR(f.K_perp, 0.0, 1e-14);
  EXPECT_EQ(f.z_u_class, CausalClass::Timelike);
  EXPECT_EQ(f.z_v_class, CausalClass::Spacelike);
  const MeridianSurface cosh_s{make_constant_K(1, 1, 0, 1, Interval::closed_range(0, 1)),
                               SphericalCurve::great_circle()};
  for (double u : {0.1, 0.4, 0.8}) EXPECT_NEAR(invariant_report(cosh_s, u, 0.0).K, 1.0, 1e-12);
}

// --- random-point properties over every family -----------------------------

class RandomPoints : public ::testing::Test {
 protected:
  template <class Body>
  void for_points(Body body) {
    std::mt19937_64 rng(424242);
    for (const auto& in : reference_instances(10)) {
      std::uniform_real_distribution<double> du(in.grid.u_min, in.grid.u_max), dv(in.grid.v_min, in.grid.v_max);
      for (int k = 0; k < 100; ++k) body(in, du(rng), dv(rng));
    }
  }
};

TEST_F(RandomPoints, FrameAndFirstForm) {
  for_points([](const Instance& in, double u, double v) {
    const FrameAtPoint f = frame(in.surface, u, v);
    EXPECT_LE(verify_orthonormal_frame(f, 1e-9).max_deviation, 1e-9) << in.name;
    const FirstForm g = first_form(in.surface, u, v);
    const double fv = in.surface.profile().f(u).value;
    EXPECT_LE(std::abs(g.F), 1e-10) << in.name;
    EXPECT_LE(std::abs(g.E + 1.0), 1e-10) << in.name;
    EXPECT_LE(std::abs(g.G - fv * fv), 1e-10) << in.name;
    const SurfaceJet j = evaluate(in.surface, u, v);
    EXPECT_LE(std::abs(minkowski_inner(j.z_u, j.z_v)), 1e-10) << in.name;
  });
}

TEST_F(RandomPoints, TwoRouteAgreement) {
  for_points([](const Instance& in, double u, double v) {
    const GaussCurvature k = gauss_curvature(in.surface, u, v);
    EXPECT_LE(std::abs(k.sigma_route - k.closed_form), 1e-8) << in.name;
    EXPECT_LE(std::abs(normal_curvature(in.surface, u, v)), 1e-8) << in.name;
    const MeanCurvature h = mean_curvature(in.surface, u, v);
    EXPECT_LE(std::abs(h.jet.n1 - h.closed.n1), 1e-8) << in.name;
    EXPECT_LE(std::abs(h.jet.n2 - h.closed.n2), 1e-8) << in.name;
    const NormalDerivativeRoutes d = normal_derivative_H(in.surface, u, v);
    EXPECT_LE(std::abs(d.jet.dx.n1 - d.closed.dx.n1), 1e-8) << in.name;
    EXPECT_LE(std::abs(d.jet.dx.n2 - d.closed.dx.n2), 1e-8) << in.name;
    EXPECT_LE(std::abs(d.jet.dy.n1 - d.closed.dy.n1), 1e-8) << in.name;
  });
}

TEST_F(RandomPoints, ProfileConstraint) {
  for_points([](const Instance& in, double u, double) {
    EXPECT_LE(std::abs(in.surface.profile().constraint_residual(u)), 1e-9) << in.name;
  });
}

TEST(Profile, GJetFromFSatisfiesConstraint) {
  const Jet3 f{1.3, 0.7, -0.2, 0.5};
  for (int s : {1, -1}) {
    const Jet3 g = g_jet_from_f(f, 0.0, s);
    EXPECT_NEAR(f.d1 * f.d1 - g.d1 * g.d1, -1.0, 1e-15);
    // Derivative of the constraint: fdot fddot = gdot gddot, and once more.
    EXPECT_NEAR(f.d1 * f.d2 - g.d1 * g.d2, 0.0, 1e-15);
    EXPECT_NEAR(f.d2 * f.d2 + f.d1 * f.d3 - g.d2 * g.d2 - g.d1 * g.d3, 0.0, 1e-14);
  }
}
