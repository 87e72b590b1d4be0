#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "meridian/families.hpp"
#include "meridian/natural_pde.hpp"

namespace meridian {

/// One family instance used by the acceptance suite.
struct Instance {
  std::string name;
  FamilySpec spec;
  MeridianSurface surface;
  Grid2 grid;
};

inline Instance make_instance(std::string name, const FamilySpec& spec, int n = 50) {
  MeridianSurface s = make_surface(spec);
  Grid2 g = default_grid(s, n, n, 0.0, 6.0);
  return {std::move(name), spec, std::move(s), g};
}

/// Reference instances, one per tag.
inline std::vector<Instance> reference_instances(int n = 50) {
  std::vector<Instance> out;
  FamilySpec s;
  s.tag = FamilyTag::Flat, s.a = 1, s.b = 2;
  out.push_back(make_instance("Flat(a=1,b=2)", s, n));
  s = {}, s.tag = FamilyTag::ConstantK, s.K = 1, s.a1 = 1, s.a2 = 0;
  out.push_back(make_instance("ConstantK(K=1) f=cosh u", s, n));
  s = {}, s.tag = FamilyTag::Minimal, s.a = 0, s.b = 1;
  out.push_back(make_instance("Minimal(a=0,b=1)", s, n));
  s = {}, s.tag = FamilyTag::CMC, s.a = 1, s.b = 1, s.c = 2, s.f0 = 1;
  out.push_back(make_instance("CMC(|H|=1,kappa=1,c=2,f0=1)", s, n));
  s = {}, s.tag = FamilyTag::ParallelH1, s.a = 1, s.c = 0, s.f0 = std::cosh(0.1);
  out.push_back(make_instance("ParallelH1(a=1,c=0,f0=cosh 0.1)", s, n));
  s = {}, s.tag = FamilyTag::ParallelH2, s.a = 2, s.b = 0, s.kappa = 3, s.u_min = -1, s.u_max = 1;
  out.push_back(make_instance("ParallelH2(a=2,kappa=3)", s, n));
  s = {}, s.tag = FamilyTag::PNMC1, s.a = 0, s.b = 1, s.kappa = 2;
  out.push_back(make_instance("PNMC1(a=0,b=1,kappa=2)", s, n));
  s = {}, s.tag = FamilyTag::PNMC2, s.a = 1, s.c = 2, s.kappa = 1, s.f0 = 1;
  out.push_back(make_instance("PNMC2(c=2,a=1,kappa=1,f0=1)", s, n));
  return out;
}

inline const Instance& find_instance(const std::vector<Instance>& all, FamilyTag t) {
  for (const auto& i : all)
    if (i.spec.tag == t) return i;
  throw Error(Errc::ConfigError, "no reference instance for tag");
}

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

inline double grid_max_over(const Instance& in, const std::function<double(double, double)>& fn) {
  return grid_max(in.grid, fn).value;
}

/// max |f(1) - cosh(1.1)| for fdot = sqrt(f^2 - 1), f(0) = cosh 0.1, at step h.
inline double cosh_oracle_error(double h) {
  const SmoothFn1 phi = quotient_generator([](const Jet3& t) { return 1.0 * t * t; }, 1, "phi_cosh");
  const OdeSolution sol = integrate_profile(phi, std::cosh(0.1), Interval::closed_range(0.0, 1.0), h);
  return std::abs(sol.node_value(sol.size() - 1) - std::cosh(1.1));
}

}  // namespace detail

/// Measured convergence order log2(e(h)/e(h/2)) on the cosh oracle.
inline double ode_convergence_order(double h = 1e-3) {
  return std::log2(detail::cosh_oracle_error(h) / detail::cosh_oracle_error(0.5 * h));
}

inline CriterionResult criterion_flat_normal_connection(const std::vector<Instance>& all) {
  double worst = 0.0;
  std::string where;
  for (const auto& in : all) {
    const double m =
        detail::grid_max_over(in, [&](double u, double v) { return std::abs(normal_curvature(in.surface, u, v)); });
    if (m >= worst) worst = m, where = in.name;
  }
  return {1, "flat normal connection: max |Kperp| <= 1e-8", worst <= 1e-8,
          "max " + detail::sci(worst) + " (" + where + ")"};
}

inline CriterionResult criterion_gauss_two_routes(const std::vector<Instance>& all) {
  double routes = 0.0;
  for (const auto& in : all)
    routes = std::max(routes, detail::grid_max_over(in, [&](double u, double v) {
                        const GaussCurvature k = gauss_curvature(in.surface, u, v);
                        return std::abs(k.sigma_route - k.closed_form);
                      }));
  const Instance& flat = find_instance(all, FamilyTag::Flat);
  const Instance& cosh = find_instance(all, FamilyTag::ConstantK);
  const double kflat = detail::grid_max_over(
      flat, [&](double u, double v) { return std::abs(gauss_curvature(flat.surface, u, v).sigma_route); });
  const double kcosh = detail::grid_max_over(
      cosh, [&](double u, double v) { return std::abs(gauss_curvature(cosh.surface, u, v).sigma_route - 1.0); });
  return {2, "Gauss curvature: routes agree <= 1e-8, flat |K| <= 1e-12, cosh |K-1| <= 1e-9",
          routes <= 1e-8 && kflat <= 1e-12 && kcosh <= 1e-9,
          "routes " + detail::sci(routes) + ", flat " + detail::sci(kflat) + ", cosh " + detail::sci(kcosh)};
}

inline CriterionResult criterion_minimal(const std::vector<Instance>& all) {
  const Instance& in = find_instance(all, FamilyTag::Minimal);
  const double h = detail::grid_max_over(in, [&](double u, double v) { return mean_norm(in.surface, u, v); });
  const double dn1 = detail::grid_max_over(in, [&](double u, double v) {
    const detail::SurfaceFields d(in.surface, u, v);
    return std::max(max_abs(partial(d.N1, 1, 0)), max_abs(partial(d.N1, 0, 1)));
  });
  return {3, "minimal: max |H| <= 1e-9, N1 constant <= 1e-8", h <= 1e-9 && dn1 <= 1e-8,
          "|H| " + detail::sci(h) + ", dN1 " + detail::sci(dn1)};
}

inline CriterionResult criterion_cmc(const std::vector<Instance>& all) {
  const Instance& in = find_instance(all, FamilyTag::CMC);
  const double dev =
      detail::grid_max_over(in, [&](double u, double v) { return std::abs(mean_norm(in.surface, u, v) - 1.0); });
  const double order = ode_convergence_order();
  return {4, "CMC: max ||H| - 1| <= 1e-6 (h=1e-3); RK4 order >= 3.9", dev <= 1e-6 && order >= 3.9,
          "dev " + detail::sci(dev) + ", order " + std::to_string(order)};
}

inline CriterionResult criterion_parallel(const std::vector<Instance>& all) {
  const Instance& p1 = find_instance(all, FamilyTag::ParallelH1);
  const Instance& p2 = find_instance(all, FamilyTag::ParallelH2);
  const double fdev =
      detail::grid_max_over(p1, [&](double u, double) { return std::abs(p1.surface.profile().f(u).value - std::cosh(u + 0.1)); });
  const double dh = detail::grid_max_over(p1, [&](double u, double v) { return normal_derivative_H(p1.surface, u, v).jet.max_abs(); });
  const double k1 = detail::grid_max_over(
      p1, [&](double u, double v) { return std::abs(gauss_curvature(p1.surface, u, v).sigma_route - 1.0); });
  const double hh = detail::grid_max_over(
      p2, [&](double u, double v) { return std::abs(invariant_report(p2.surface, u, v).H_norm_sq - 0.625); });
  const double k2 = detail::grid_max_over(
      p2, [&](double u, double v) { return std::abs(gauss_curvature(p2.surface, u, v).sigma_route); });
  const bool pass = fdev <= 1e-8 && dh <= 1e-7 && k1 <= 1e-7 && hh <= 1e-10 && k2 <= 1e-12;
  return {5, "parallel H: (i) f=cosh(u+0.1) <= 1e-8, DH <= 1e-7, |K-1| <= 1e-7; (ii) <H,H>=0.625 <= 1e-10, K <= 1e-12",
          pass,
          "f " + detail::sci(fdev) + ", DH " + detail::sci(dh) + ", K-1 " + detail::sci(k1) + ", <H,H> " +
              detail::sci(hh) + ", K " + detail::sci(k2)};
}

inline CriterionResult criterion_pnmc(const std::vector<Instance>& all) {
  std::ostringstream os;
  bool pass = true;
  for (FamilyTag t : {FamilyTag::PNMC1, FamilyTag::PNMC2}) {
    const Instance& in = find_instance(all, t);
    const FamilyVerdict v = verify_family(in.surface, in.spec, in.grid, 1e-7);
    pass = pass && v.pass;
    os << to_string(t) << ": DH0 " << detail::sci(v.max_violation) << ", DxH " << detail::sci(v.witness.value_or(0.0))
       << "; ";
  }
  return {6, "PNMC: max |D H0| <= 1e-7 and max |D_X H| >= 0.01", pass, os.str()};
}

inline CriterionResult criterion_geometric_functions(const std::vector<Instance>& all) {
  double d1 = 0.0, d2 = 0.0, beta = 0.0;
  const Instance& p1 = find_instance(all, FamilyTag::PNMC1);
  const Instance& p2 = find_instance(all, FamilyTag::PNMC2);
  for (const Instance* in : {&p1, &p2}) {
    Grid2 g = in->grid;
    g.nu = g.nv = 5;
    const double d = grid_max(g, [&](double u, double v) {
                       const GeometricFunctions num = geometric_functions(in->surface, u, v);
                       const GeometricFunctions ref =
                           in == &p1 ? closed_geometric_functions_pnmc1(in->spec.a, in->spec.b, in->spec.kappa, u)
                                     : closed_geometric_functions_pnmc2(in->spec.c, in->spec.a, in->spec.kappa,
                                                                        in->surface.profile().f(u));
                       return num.max_abs_diff(ref);
                     }).value;
    (in == &p1 ? d1 : d2) = d;
    beta = std::max(beta, detail::grid_max_over(*in, [&](double u, double v) {
                      const GeometricFunctions num = geometric_functions(in->surface, u, v);
                      return std::max(std::abs(num.beta1), std::abs(num.beta2));
                    }));
  }
  return {7, "geometric functions: numeric vs closed form <= 1e-6 (25 pts); |beta| <= 1e-8",
          d1 <= 1e-6 && d2 <= 1e-6 && beta <= 1e-8,
          "PNMC1 " + detail::sci(d1) + ", PNMC2 " + detail::sci(d2) + ", beta " + detail::sci(beta)};
}

/// Example grids: u as given, v in [0, 2 pi], 50 x 50.
inline Grid2 example_grid(int which) {
  const double tp = 2.0 * std::numbers::pi;
  return which == 1 ? Grid2{-0.9, 2.9, 50, 0.0, tp, 50} : Grid2{0.5, 9.5, 50, 0.0, tp, 50};
}

inline CriterionResult criterion_natural_pde() {
  const SmoothFn1 kappa = kappa_sin_offset(2.0);
  const Interval vr = Interval::closed_range(0.0, 2.0 * std::numbers::pi);
  std::ostringstream os;
  bool pass = true;
  for (int ex : {1, 2}) {
    const double a = ex == 1 ? 1.0 : 5.0, b = ex == 1 ? 3.0 : 0.0;
    const FieldTriple t = solution_family(a, b, kappa);
    const Grid2 g = example_grid(ex);
    const ResidualReport r = residual_syst1(t, solution_chart(a, b, kappa, vr), g, 1e-8);
    const ResidualReport neg = residual_fund(t, +1, g, 1e-8);
    double neg_max = 0.0;
    for (const auto& e : neg.equations) neg_max = std::max(neg_max, e.max_abs);
    pass = pass && r.pass && neg_max >= 0.1;
    os << "Example " << ex << ": syst1 [";
    for (std::size_t k = 0; k < r.equations.size(); ++k) os << (k ? ", " : "") << detail::sci(r.equations[k].max_abs);
    os << "], control " << detail::sci(neg_max) << "; ";
  }
  return {8, "natural PDE examples: syst1 residuals <= 1e-8; eps=+1 control >= 0.1", pass, os.str()};
}

inline CriterionResult criterion_frames(const std::vector<Instance>& all, std::uint64_t seed = 20240611) {
  std::mt19937_64 rng(seed);
  double ortho = 0.0, iso = 0.0;
  for (const auto& in : all) {
    std::uniform_real_distribution<double> U(in.grid.u_min, in.grid.u_max), V(in.grid.v_min, in.grid.v_max);
    const bool has_h = in.spec.tag != FamilyTag::Minimal;
    for (int k = 0; k < 100; ++k) {
      const double u = U(rng), v = V(rng);
      ortho = std::max(ortho, verify_orthonormal_frame(frame(in.surface, u, v), 1e-9).max_deviation);
      if (has_h) iso = std::max(iso, verify_isotropic_frame(isotropic_frame(in.surface, u, v), 1e-9).max_deviation);
    }
  }
  return {9, "frame Gram deviation <= 1e-9 (100 random points per surface)", ortho <= 1e-9 && iso <= 1e-9,
          "orthonormal " + detail::sci(ortho) + ", isotropic " + detail::sci(iso)};
}

inline CriterionResult criterion_profile_constraint(const std::vector<Instance>& all) {
  double worst = 0.0;
  for (const auto& in : all)
    worst = std::max(worst, detail::grid_max_over(in, [&](double u, double) {
                       return std::abs(in.surface.profile().constraint_residual(u));
                     }));
  return {10, "profile constraint |fdot^2 - gdot^2 + 1| <= 1e-9", worst <= 1e-9, "max " + detail::sci(worst)};
}

inline std::vector<CriterionResult> run_acceptance() {
  const std::vector<Instance> all = reference_instances();
  return {criterion_flat_normal_connection(all), criterion_gauss_two_routes(all), criterion_minimal(all),
          criterion_cmc(all),  criterion_parallel(all), criterion_pnmc(all), criterion_geometric_functions(all),
          criterion_natural_pde(), criterion_frames(all), criterion_profile_constraint(all)};
}

inline std::string format_criterion(const CriterionResult& c) {
  std::ostringstream os;
  os << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << " :: " << c.detail;
  return os.str();
}

}  // namespace meridian
