#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "meridian/families.hpp"
#include "meridian/kappa.hpp"
#include "meridian/selfcheck.hpp"

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

FamilySpec spec(FamilyTag t) {
  FamilySpec s;
  s.tag = t;
  return s;
}

template <class F>
double worst(const Grid2& g, F fn) {
  double m = 0.0;
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) m = std::max(m, std::abs(fn(g.u(i), g.v(j))));
  return m;
}

const Interval kUnit = Interval::closed_range(0.0, 1.0);

}  // namespace

// --- constructors ---------------------------------------------------------

TEST(Flat, Examples) {
  const MeridianProfile p = make_flat(0, 1, 0, 1, kUnit);
  EXPECT_EQ(p.f(0.4).value, 1.0);
  EXPECT_EQ(p.g(0.4).value, 0.4);
  const MeridianProfile q = make_flat(1, 2, 0, 1, kUnit);
  EXPECT_DOUBLE_EQ(q.g(0.3).d1, std::sqrt(2.0));
  EXPECT_NEAR(q.constraint_residual(0.3), 0.0, 1e-15);
  const MeridianSurface s{q, SphericalCurve::great_circle()};
  const Grid2 g{0, 1, 50, 0, 6, 2};
  EXPECT_LE(worst(g, [&](double u, double v) { return gauss_curvature(s, u, v).sigma_route; }), 1e-12);
}

TEST(Flat, Errors) {
  EXPECT_EQ(code_of([] { make_flat(1, 0.5, 0, 1, Interval::closed_range(-1, 1)); }), Errc::NonpositiveProfile);
}

TEST(ConstantK, HyperbolicBranch) {
  const MeridianProfile p = make_constant_K(1, 1, 0, 1, Interval::closed_range(-1, 1));
  const MeridianSurface s{p, SphericalCurve::great_circle()};
  for (double u : {-0.8, 0.0, 0.6}) {
    EXPECT_NEAR(p.f(u).value, std::cosh(u), 1e-15);
    EXPECT_NEAR(gauss_curvature(s, u, 0.0).sigma_route, 1.0, 1e-12);
    // gdot = cosh u, so g = sinh u - sinh(-1).
    EXPECT_NEAR(p.g(u).value, std::sinh(u) + std::sinh(1.0), 1e-10);
  }
}

TEST(ConstantK, TrigonometricBranch) {
  const double d = 0.1;
  const Interval I = Interval::closed_range(-std::numbers::pi / 2 + d, std::numbers::pi / 2 - d);
  const MeridianProfile p = make_constant_K(-1, 1, 0, 1, I);
  const MeridianSurface s{p, SphericalCurve::great_circle()};
  const Grid2 g{I.lo, I.hi, 50, 0, 6, 3};
  EXPECT_LE(worst(g, [&](double u, double v) { return gauss_curvature(s, u, v).sigma_route + 1.0; }), 1e-10);
  EXPECT_LE(worst(g, [&](double u, double) { return p.constraint_residual(u); }), 1e-9);
}

TEST(ConstantK, Errors) {
  EXPECT_EQ(code_of([] { make_constant_K(0, 1, 0, 1, kUnit); }), Errc::ParameterConflict);
  EXPECT_EQ(code_of([] { make_constant_K(-1, 1, 0, 1, Interval::closed_range(0, 2)); }), Errc::NonpositiveProfile);
}

TEST(Minimal, Examples) {
  const MeridianProfile p = make_minimal(0, 1, 0, 1);
  EXPECT_NEAR(p.domain().lo, -1.0, 0);
  EXPECT_NEAR(p.domain().hi, 1.0, 0);
  const Grid2 g{-0.9, 0.9, 50, 0, 6, 3};
  EXPECT_LE(worst(g,
                     [&](double u, double) {
                       const Jet3 f = p.f(u);
                       return 1.0 + f.d1 * f.d1 + f.value * f.d2;
                     }),
            1e-10);
  const MeridianSurface flat_dir{p, SphericalCurve::great_circle()};
  EXPECT_LE(worst(g, [&](double u, double v) { return mean_norm(flat_dir, u, v); }), 1e-12);
  const MeridianSurface curved{p, SphericalCurve::with_constant_curvature(2)};
  for (double u : {-0.5, 0.0, 0.5})
    EXPECT_NEAR(mean_norm(curved, u, 1.0), 2.0 / (2.0 * std::sqrt(1 - u * u)), 1e-12);
}

TEST(Minimal, Errors) {
  EXPECT_EQ(code_of([] { make_minimal(0, -1, 0, 1); }), Errc::EmptyInterval);
  EXPECT_EQ(code_of([] { make_minimal(0, 1, 0, 1, Interval::open(-2, 0)); }), Errc::NonpositiveProfile);
  EXPECT_EQ(code_of([] { make_pnmc1(0, 1, 0, 1, Interval::closed_range(0.5, 0.2)); }), Errc::EmptyInterval);
}

TEST(Cmc, ConstantMeanNormAndClosedRelation) {
  const MeridianProfile p = make_cmc(1, 1, 2, 1, {}, 1, kUnit, 1e-3);
  const MeridianSurface s{p, SphericalCurve::with_constant_curvature(1)};
  const Grid2 g{0, 1, 50, 0, 6, 5};
  EXPECT_LE(worst(g, [&](double u, double v) { return mean_norm(s, u, v) - 1.0; }), 1e-6);
  // (1 + fdot^2 + f fddot)^2 = (1 + fdot^2)(4 a^2 f^2 - b^2)
  EXPECT_LE(worst(g,
                     [&](double u, double) {
                       const Jet3 f = p.f(u);
                       const double P = 1 + f.d1 * f.d1 + f.value * f.d2;
                       return P * P - (1 + f.d1 * f.d1) * (4 * f.value * f.value - 1);
                     }),
            1e-6);
}

TEST(Cmc, OtherBranch) {
  FamilySpec sp = spec(FamilyTag::CMC);
  sp.a = 1, sp.b = 1, sp.c = 3, sp.f0 = 1, sp.inner_sign = -1;
  const MeridianSurface s = make_surface(sp);
  EXPECT_TRUE(verify_family(s, sp, default_grid(s, 30, 5), 1e-6).pass);
}

TEST(Cmc, KappaMismatchBreaksConstancy) {
  FamilySpec sp = spec(FamilyTag::CMC);
  sp.a = 1, sp.b = 1, sp.c = 2, sp.f0 = 1;
  sp.directrix = "latitude:2";
  const MeridianSurface s = make_surface(sp);
  const FamilyVerdict v = verify_family(s, sp, default_grid(s, 20, 5), 1e-6);
  EXPECT_FALSE(v.pass);
  EXPECT_GT(v.max_violation, 0.1);
}

TEST(Cmc, Errors) {
  EXPECT_EQ(code_of([] { make_cmc(0, 1, 2, 1, {}, 1, kUnit, 1e-3); }), Errc::ParameterConflict);
  EXPECT_EQ(code_of([] { make_cmc(1, 0, 2, 1, {}, 1, kUnit, 1e-3); }), Errc::ParameterConflict);
  EXPECT_EQ(code_of([] { make_cmc(1, 3, 2, 1, {}, 1, kUnit, 1e-3); }), Errc::RadicandNegative);
  EXPECT_EQ(code_of([] { make_cmc(1, 1, 2, 1, {}, 1, kUnit, 0.0); }), Errc::StepSizeNonpositive);
}

TEST(ParallelH1, CoshProfile) {
  const MeridianProfile p = make_parallel_H1(1, 0, std::cosh(0.1), 1, 1, kUnit, 1e-3);
  const MeridianSurface s{p, SphericalCurve::great_circle()};
  const Grid2 g{0, 1, 50, 0, 6, 5};
  EXPECT_LE(worst(g, [&](double u, double) { return p.f(u).value - std::cosh(u + 0.1); }), 1e-8);
  EXPECT_LE(worst(g, [&](double u, double v) { return gauss_curvature(s, u, v).sigma_route - 1.0; }), 1e-8);
  EXPECT_LE(worst(g, [&](double u, double v) { return mean_norm(s, u, v) - 1.0; }), 1e-8);
  EXPECT_LE(worst(g, [&](double u, double v) { return normal_derivative_H(s, u, v).jet.max_abs(); }), 1e-7);
}

TEST(ParallelH1, GaussCurvatureFormula) {
  // K = (a^2 f^4 - c^2) / f^4 along the profile.
  const double a = 0.5, c = 0.3, f0 = 2.0;
  const MeridianProfile p = make_parallel_H1(a, c, f0, 1, 1, kUnit, 1e-3);
  const MeridianSurface s{p, SphericalCurve::great_circle()};
  for (double u : {0.0, 0.5, 1.0}) {
    const double f = p.f(u).value;
    EXPECT_NEAR(gauss_curvature(s, u, 0.0).sigma_route, (a * a * f * f * f * f - c * c) / (f * f * f * f), 1e-10);
  }
}

TEST(ParallelH1, EarlyStopIsRecorded) {
  // Decreasing branch reaches the radicand zero at f = 1 near u = 0.5.
  const MeridianProfile p = make_parallel_H1(1, 0, std::cosh(0.5), -1, 1, kUnit, 1e-3);
  ASSERT_TRUE(p.integration_note().has_value());
  EXPECT_LT(p.domain().hi, 0.51);
  EXPECT_EQ(code_of([&] { p.f(0.9); }), Errc::OutOfDomain);
}

TEST(ParallelH1, Errors) {
  EXPECT_EQ(code_of([] { make_parallel_H1(0, 0, 1, 1, 1, kUnit, 1e-3); }), Errc::ParameterConflict);
  EXPECT_EQ(code_of([] { make_parallel_H1(1, 0, 1, 1, 1, kUnit, 1e-3); }), Errc::RadicandNegative);
  EXPECT_EQ(code_of([] { make_parallel_H1(1, 0, -1, 1, 1, kUnit, 1e-3); }), Errc::NonpositiveProfile);
}

TEST(ParallelH2, Examples) {
  const MeridianSurface s{make_parallel_H2(2, 0, 1), SphericalCurve::with_constant_curvature(3)};
  const Grid2 g{-1, 1, 20, 0, 6, 5};
  EXPECT_LE(worst(g, [&](double u, double v) { return invariant_report(s, u, v).H_norm_sq - 10.0 / 16.0; }), 1e-12);
  EXPECT_LE(worst(g, [&](double u, double v) { return gauss_curvature(s, u, v).sigma_route; }), 1e-12);
  EXPECT_LE(worst(g, [&](double u, double v) { return normal_derivative_H(s, u, v).jet.max_abs(); }), 1e-12);
  EXPECT_EQ(code_of([] { make_parallel_H2(0, 0, 1); }), Errc::NonpositiveProfile);
}

TEST(ParallelH2, NonconstantKappaFails) {
  FamilySpec sp = spec(FamilyTag::ParallelH2);
  sp.a = 2, sp.kappa = 3;
  sp.directrix = "frenet:sin-offset:3";
  sp.u_min = 0, sp.u_max = 1;
  const MeridianSurface s = make_surface(sp);
  const FamilyVerdict v = verify_family(s, sp, Grid2{0, 1, 10, 0, 6, 10}, 1e-6);
  EXPECT_FALSE(v.pass);
  // D_Y H = kappa'/(2 f^2) = cos v / 8, at most 1/8.
  EXPECT_NEAR(v.max_violation, 0.125, 2e-3);
}

TEST(Pnmc1, Examples) {
  const MeridianSurface s{make_pnmc1(0, 1, 0, 1), SphericalCurve::with_constant_curvature(2)};
  for (double u : {-0.5, 0.0, 0.5}) {
    EXPECT_LE(normal_derivative_H0(s, u, 1.0).jet.max_abs(), 1e-10);
    EXPECT_NEAR(mean_curvature(s, u, 1.0).jet.n2, 0.0, 1e-12);  // H0 = N1
    EXPECT_NEAR(mean_norm(s, u, 1.0), 1.0 / std::sqrt(1 - u * u), 1e-12);
  }
  EXPECT_GT(normal_derivative_H(s, 0.5, 1.0).jet.dx.max_abs(), 0.1);
}

TEST(Pnmc2, ProfileRelations) {
  const MeridianProfile p = make_pnmc2(1, 2, 1, 1, 1, 1, kUnit, 1e-3);
  const Grid2 g{0, 1, 50, 0, 1, 2};
  EXPECT_LE(worst(g,
                     [&](double u, double) {
                       const Jet3 f = p.f(u);
                       return std::sqrt(f.d1 * f.d1 + 1) * f.value - (2 * f.value + 1);
                     }),
            1e-7);
  EXPECT_LE(worst(g,
                     [&](double u, double) {
                       const Jet3 f = p.f(u);
                       return f.value * f.d2 + f.d1 * f.d1 + 1 - 2 * std::sqrt(f.d1 * f.d1 + 1);
                     }),
            1e-6);
}

TEST(Pnmc2, ParallelNormalizedButNotParallel) {
  FamilySpec sp = spec(FamilyTag::PNMC2);
  sp.a = 1, sp.c = 2, sp.kappa = 1, sp.f0 = 1;
  const MeridianSurface s = make_surface(sp);
  const FamilyVerdict v = verify_family(s, sp, default_grid(s, 30, 10), 1e-8);
  EXPECT_TRUE(v.pass) << v.note;
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_GT(*v.witness, kNonParallelWitness);
}

TEST(Pnmc2, Errors) {
  EXPECT_EQ(code_of([] { make_pnmc2(1, 0, 1, 1, 1, 1, kUnit, 1e-3); }), Errc::ParameterConflict);
  EXPECT_EQ(code_of([] { make_pnmc2(1, 2, 0, 1, 1, 1, kUnit, 1e-3); }), Errc::ParameterConflict);
  EXPECT_EQ(code_of([] { make_pnmc2(1, 2, -2, 1, 1, 1, kUnit, 1e-3); }), Errc::ParameterConflict);
  EXPECT_EQ(code_of([] { make_pnmc2(0, 1, 2, 1, 1, 1, kUnit, 1e-3); }), Errc::RadicandNegative);
  EXPECT_EQ(code_of([] { make_pnmc2(1, 2, 1, 0, 1, 1, kUnit, 1e-3); }), Errc::NonpositiveProfile);
}

// --- verify_family --------------------------------------------------------

TEST(VerifyFamily, ConstructionRoundTrip) {
  for (const auto& in : reference_instances(50)) {
    const FamilyVerdict v = verify_family(in.surface, in.spec, in.grid, 1e-6);
    EXPECT_TRUE(v.pass) << in.name << ": " << v.property << " " << v.max_violation << " " << v.note;
    EXPECT_EQ(v.grid.nu, 50);
  }
}

TEST(VerifyFamily, PropertyNames) {
  EXPECT_EQ(to_string(family_property(FamilyTag::Flat)), "K==0");
  EXPECT_EQ(to_string(family_property(FamilyTag::CMC)), "|H|==const");
  EXPECT_EQ(to_string(family_property(FamilyTag::PNMC2)), "DH0==0 && DH!=0");
}

TEST(VerifyFamily, MinimalSpecOnPnmc1SurfaceFails) {
  FamilySpec sp = spec(FamilyTag::PNMC1);
  sp.a = 0, sp.b = 1, sp.kappa = 2;
  const MeridianSurface s = make_surface(sp);
  const Grid2 g = default_grid(s, 20, 5);
  const FamilyVerdict v = verify_family(s, spec(FamilyTag::Minimal), g, 1e-6);
  EXPECT_FALSE(v.pass);
  const double expected = worst(g, [&](double u, double) { return 2.0 / (2.0 * s.profile().f(u).value); });
  EXPECT_NEAR(v.max_violation, expected, 1e-10);
}

TEST(VerifyFamily, PnmcSpecOnMinimalSurfaceFails) {
  const MeridianSurface s{make_minimal(0, 1, 0, 1), SphericalCurve::great_circle()};
  const FamilyVerdict v = verify_family(s, spec(FamilyTag::PNMC1), default_grid(s, 5, 5), 1e-6);
  EXPECT_FALSE(v.pass);
  EXPECT_TRUE(std::isinf(v.max_violation));
}

TEST(VerifyFamily, ParallelSurfaceIsNotPnmc) {
  // Parallel H is excluded from the PNMC property by the D_X H witness.
  const MeridianSurface s{make_parallel_H2(2, 0, 1), SphericalCurve::with_constant_curvature(3)};
  const FamilyVerdict v = verify_family(s, spec(FamilyTag::PNMC2), Grid2{0, 1, 5, 0, 6, 5}, 1e-6);
  EXPECT_LE(v.max_violation, 1e-10);
  EXPECT_FALSE(v.pass);
}

TEST(VerifyFamily, GridOutsideDomain) {
  const MeridianSurface s{make_minimal(0, 1, 0, 1), SphericalCurve::great_circle()};
  EXPECT_EQ(code_of([&] { verify_family(s, spec(FamilyTag::Minimal), Grid2{-2, 0, 5, 0, 1, 5}, 1e-6); }),
            Errc::OutOfDomain);
  EXPECT_EQ(code_of([&] { verify_family(s, spec(FamilyTag::Minimal), Grid2{0, 0.5, 1, 0, 1, 5}, 1e-6); }),
            Errc::ConfigError);
}

TEST(Corollary, MinimalSurfacesHaveConstantN1) {
  for (const MeridianSurface& s : {MeridianSurface{make_minimal(0, 1, 0, 1), SphericalCurve::great_circle()},
                                   MeridianSurface{make_minimal(0.5, 2, 1, -1), SphericalCurve::great_circle()}}) {
    const double h = 1e-5;
    for (double u : {-0.3, 0.2})
      for (double v : {0.5, 2.0}) {
        const Vec4M du = (frame(s, u + h, v).N1 - frame(s, u - h, v).N1) / (2 * h);
        const Vec4M dv = (frame(s, u, v + h).N1 - frame(s, u, v - h).N1) / (2 * h);
        EXPECT_LE(max_abs(du), 1e-8);
        EXPECT_LE(max_abs(dv), 1e-8);
      }
  }
}

TEST(Corollary, ParallelMeanImpliesConstantMeanNorm) {
  for (const auto& in : reference_instances(30)) {
    if (in.spec.tag != FamilyTag::ParallelH1 && in.spec.tag != FamilyTag::ParallelH2) continue;
    const double target = mean_norm(in.surface, in.grid.u_min, in.grid.v_min);
    const FamilyVerdict v = verify_property(in.surface, Property::ConstantMeanNorm, target, in.grid, 1e-6);
    EXPECT_TRUE(v.pass) << in.name << " " << v.max_violation;
  }
}

TEST(OdeProfiles, ConstraintHoldsOnGrid) {
  for (const auto& in : reference_instances(50))
    EXPECT_LE(worst(in.grid, [&](double u, double) { return in.surface.profile().constraint_residual(u); }), 1e-9)
        << in.name;
}

// --- selectors and defaults ----------------------------------------------

TEST(Selectors, FamilyTags) {
  EXPECT_EQ(parse_family_tag("PNMC2"), FamilyTag::PNMC2);
  EXPECT_EQ(parse_family_tag("ConstantK"), FamilyTag::ConstantK);
  EXPECT_EQ(code_of([] { parse_family_tag("Sphere"); }), Errc::ConfigError);
}

TEST(Selectors, DefaultDirectrix) {
  FamilySpec sp = spec(FamilyTag::CMC);
  sp.b = 1.5;
  EXPECT_EQ(directrix_selector(sp), "latitude:1.5");
  EXPECT_EQ(directrix_selector(spec(FamilyTag::Minimal)), "great-circle");
  EXPECT_EQ(directrix_selector(spec(FamilyTag::Flat)), "great-circle");
  sp.directrix = "frenet:const:1";
  EXPECT_EQ(directrix_selector(sp), "frenet:const:1");
}

TEST(Selectors, KappaAndDirectrix) {
  const SmoothFn1 k = parse_kappa("poly:1,2,3");
  EXPECT_DOUBLE_EQ(k(2.0).value, 1 + 4 + 12);
  EXPECT_DOUBLE_EQ(k(2.0).d1, 2 + 12);
  EXPECT_DOUBLE_EQ(parse_kappa("sin-offset:2")(0.0).value, 2.0);
  EXPECT_DOUBLE_EQ(parse_kappa("const:-1.5")(3.0).value, -1.5);
  EXPECT_EQ(code_of([] { parse_kappa("sin"); }), Errc::ConfigError);
  EXPECT_EQ(code_of([] { parse_kappa("const:abc"); }), Errc::ConfigError);
  EXPECT_EQ(code_of([] { make_directrix("helix", Interval::closed_range(0, 1)); }), Errc::ConfigError);
}

TEST(Selectors, UnitIntervalDefaultAndHalfSpecifiedInterval) {
  FamilySpec sp = spec(FamilyTag::Flat);
  sp.b = 1;
  EXPECT_EQ(make_profile(sp).domain().hi, 1.0);
  sp.u_min = -1;
  EXPECT_EQ(code_of([&] { make_profile(sp); }), Errc::ConfigError);
}
