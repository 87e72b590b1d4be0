#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"
#include "meridian/cli/config.hpp"
#include "meridian/cli/export.hpp"
#include "meridian/families.hpp"
#include "meridian/natural_pde.hpp"
#include "meridian/selfcheck.hpp"

namespace meridian::cli {

inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::ConfigError:
    case Errc::ParameterConflict:
    case Errc::StepSizeNonpositive:
    case Errc::EmptyInterval:
    case Errc::SizeMismatch: return kConfigError;
    default: return kNumericFailure;
  }
}

/// Runs a command body, turning exceptions into the exit-code contract.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: ConfigError: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}

namespace detail {

inline const FamilySpec& require_family(const RunConfig& c) {
  if (!c.family) throw Error(Errc::ConfigError, "config has no 'family'");
  return *c.family;
}

/// v-range used when a directrix has to be integrated.
inline Interval v_range_for(const RunConfig& c) {
  if (c.grid) return Interval::closed_range(c.grid->v_min, c.grid->v_max);
  return Interval::closed_range(0.0, 6.0);
}

struct Prepared {
  MeridianSurface surface;
  Grid2 grid;
};

/// Builds the surface and checks the grid against its domain before any
/// sweep. A grid that runs past an ODE integration that stopped early is a
/// numeric failure; otherwise it is a config error.
inline Prepared prepare(const RunConfig& c, int default_n = 50) {
  const FamilySpec& spec = require_family(c);
  MeridianSurface s = make_surface(spec, v_range_for(c));
  Grid2 g = c.grid ? *c.grid : default_grid(s, default_n, default_n, 0.0, 6.0);
  g.validate();
  for (double u : {g.u_min, g.u_max})
    for (double v : {g.v_min, g.v_max})
      if (!s.contains(u, v)) {
        std::ostringstream os;
        os << "grid " << g.describe() << " leaves surface domain " << s.profile().domain().describe() << " x "
           << s.directrix().domain().describe();
        if (const auto& note = s.profile().integration_note()) {
          os << "; " << *note;
          throw Error(Errc::IntegrationStopped, os.str());
        }
        throw Error(Errc::ConfigError, os.str());
      }
  return {std::move(s), g};
}

inline std::filesystem::path out_dir(const RunConfig& c) {
  if (c.out.empty()) throw Error(Errc::ConfigError, "an output directory is required (--out)");
  std::filesystem::path p(c.out);
  std::filesystem::create_directories(p);
  return p;
}

inline void write_file(const std::filesystem::path& p, const std::function<void(std::ostream&)>& fn) {
  std::ofstream os(p);
  if (!os) throw Error(Errc::ConfigError, "cannot write '" + p.string() + "'");
  fn(os);
}

inline nlohmann::json verdict_json(const FamilyVerdict& v) {
  nlohmann::json j = {{"property", v.property}, {"max_violation", v.max_violation}, {"tol", v.tol},
                      {"pass", v.pass},         {"grid", grid_to_json(v.grid)},     {"note", v.note}};
  if (v.witness) j["max_DXH"] = *v.witness;
  return j;
}

inline nlohmann::json residual_json(const ResidualReport& r) {
  nlohmann::json eq = nlohmann::json::array();
  for (const auto& e : r.equations)
    eq.push_back({{"equation", e.equation}, {"max_abs", e.max_abs}, {"rms", e.rms}, {"worst_u", e.worst_u},
                  {"worst_v", e.worst_v}});
  nlohmann::json j = {{"system", r.system}, {"equations", eq}, {"grid", grid_to_json(r.grid)},
                      {"tol", r.tol},       {"pass", r.pass}};
  if (r.epsilon != 0) j["epsilon"] = r.epsilon;
  return j;
}

inline nlohmann::json geometric_json(const GeometricFunctions& g) {
  nlohmann::json j;
  const auto a = g.as_array();
  for (std::size_t k = 0; k < a.size(); ++k) j[GeometricFunctions::names[k]] = a[k];
  return j;
}

}  // namespace detail

/// Writes surface.csv, surface.obj and summary.json into the output directory.
inline int cmd_generate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto dir = detail::out_dir(c);
    const detail::Prepared p = detail::prepare(c);
    const auto samples = sample_surface(p.surface, p.grid);
    detail::write_file(dir / "surface.csv", [&](std::ostream& os) { write_csv(os, samples); });
    detail::write_file(dir / "surface.obj", [&](std::ostream& os) { write_obj(os, samples, p.grid); });
    double kmax = 0.0, kperp = 0.0, dh0 = 0.0;
    for (const auto& s : samples) {
      kmax = std::max(kmax, std::abs(s.K));
      kperp = std::max(kperp, std::abs(s.Kperp));
      if (!std::isnan(s.DH0_max)) dh0 = std::max(dh0, s.DH0_max);
    }
    nlohmann::json summary = {{"config", c.raw},
                              {"surface", p.surface.profile().label() + " x " + p.surface.directrix().label()},
                              {"grid", grid_to_json(p.grid)},
                              {"files", {"surface.csv", "surface.obj"}},
                              {"max_abs_K", kmax},
                              {"max_abs_Kperp", kperp},
                              {"max_DH0", dh0}};
    if (const auto& n = p.surface.profile().integration_note()) summary["integration_note"] = *n;
    detail::write_file(dir / "summary.json", [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
    out << summary.dump(2) << '\n';
    return static_cast<int>(kPass);
  });
}

/// Writes one export in the configured format to <out>/surface.<ext>, or to
/// stdout when no output directory is given.
inline int cmd_export(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const detail::Prepared p = detail::prepare(c);
    const auto samples = sample_surface(p.surface, p.grid);
    auto emit = [&](std::ostream& os) {
      if (c.format == "csv") write_csv(os, samples);
      else if (c.format == "obj") write_obj(os, samples, p.grid);
      else os << nlohmann::json{{"config", c.raw}, {"grid", grid_to_json(p.grid)}, {"samples", samples_to_json(samples)}}.dump(1) << '\n';
    };
    if (c.out.empty()) emit(out);
    else detail::write_file(detail::out_dir(c) / ("surface." + c.format), emit);
    return static_cast<int>(kPass);
  });
}

/// Checks the family's defining property; parallel-H families also get the
/// constant-|H| property. Exit 0 iff every verdict passes.
inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const detail::Prepared p = detail::prepare(c);
    const FamilySpec& spec = *c.family;
    const double tol = c.tol.value_or(1e-6);
    std::vector<FamilyVerdict> verdicts{verify_family(p.surface, spec, p.grid, tol)};
    if (spec.tag == FamilyTag::ParallelH1 || spec.tag == FamilyTag::ParallelH2) {
      const double h0 = mean_norm(p.surface, p.grid.u(0), p.grid.v(0));
      verdicts.push_back(verify_property(p.surface, Property::ConstantMeanNorm, h0, p.grid, tol));
    }
    bool pass = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : verdicts) {
      pass = pass && v.pass;
      arr.push_back(detail::verdict_json(v));
    }
    const nlohmann::json report = {{"config", c.raw}, {"family", std::string(to_string(spec.tag))},
                                   {"verdicts", arr}, {"pass", pass}};
    out << report.dump(2) << '\n';
    if (!c.out.empty())
      detail::write_file(detail::out_dir(c) / "verdict.json", [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    return pass ? static_cast<int>(kPass) : static_cast<int>(kPropertyFailure);
  });
}

/// Geometric functions on a grid (default 5x5). For PNMC1/PNMC2 with their
/// own constant-curvature directrix the closed forms are compared too.
inline int cmd_geomfuncs(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const detail::Prepared p = detail::prepare(c, 5);
    const FamilySpec& spec = *c.family;
    const double tol = c.tol.value_or(1e-6);
    const bool closed = spec.directrix.empty() && (spec.tag == FamilyTag::PNMC1 || spec.tag == FamilyTag::PNMC2);
    nlohmann::json points = nlohmann::json::array();
    double worst = 0.0;
    for (int i = 0; i < p.grid.nu; ++i)
      for (int j = 0; j < p.grid.nv; ++j) {
        const double u = p.grid.u(i), v = p.grid.v(j);
        const GeometricFunctions num = geometric_functions(p.surface, u, v);
        nlohmann::json pt = {{"u", u}, {"v", v}, {"numeric", detail::geometric_json(num)}};
        if (closed) {
          const GeometricFunctions ref =
              spec.tag == FamilyTag::PNMC1 ? closed_geometric_functions_pnmc1(spec.a, spec.b, spec.kappa, u)
                                           : closed_geometric_functions_pnmc2(spec.c, spec.a, spec.kappa,
                                                                              p.surface.profile().f(u));
          pt["closed"] = detail::geometric_json(ref);
          pt["max_abs_diff"] = num.max_abs_diff(ref);
          worst = std::max(worst, num.max_abs_diff(ref));
        }
        points.push_back(std::move(pt));
      }
    nlohmann::json report = {{"config", c.raw}, {"grid", grid_to_json(p.grid)}, {"points", points}};
    bool pass = true;
    if (closed) {
      pass = worst <= tol;
      report["max_abs_diff"] = worst;
      report["tol"] = tol;
      report["pass"] = pass;
    }
    out << report.dump(2) << '\n';
    if (!c.out.empty())
      detail::write_file(detail::out_dir(c) / "geomfuncs.json", [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    return pass ? static_cast<int>(kPass) : static_cast<int>(kPropertyFailure);
  });
}

namespace detail {

struct PdeCase {
  FieldTriple fields;
  std::optional<std::array<double, 2>> ab;  // chart parameters when the fields come from the solution family
  Grid2 grid;
};

inline PdeCase pde_case(const PdeSelection& sel, const std::optional<Grid2>& grid) {
  double a = 0.0, b = 0.0;
  std::optional<Grid2> def;
  if (sel.solution == "example1") {
    a = 1.0, b = 3.0, def = example_grid(1);
  } else if (sel.solution == "example2") {
    a = 5.0, b = 0.0, def = example_grid(2);
  } else if (sel.solution == "separable") {
    return {separable_solution(), std::nullopt, grid.value_or(Grid2{-1.0, 1.0, 50, 0.0, 6.0, 50})};
  } else {
    static const std::regex re(R"(family\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\))");
    std::smatch m;
    if (!std::regex_match(sel.solution, m, re))
      throw Error(Errc::ConfigError, "unknown solution '" + sel.solution + "'");
    a = meridian::detail::parse_number(m[1], sel.solution);
    b = meridian::detail::parse_number(m[2], sel.solution);
    if (!(a * a + b > 0.0)) throw Error(Errc::EmptyInterval, "family(a,b) needs a^2 + b > 0");
    const double r = std::sqrt(a * a + b);
    def = Grid2{a - 0.9 * r, a + 0.9 * r, 50, 0.0, 2.0 * std::numbers::pi, 50};
  }
  return {solution_family(a, b, parse_kappa(sel.kappa)), std::array<double, 2>{a, b}, grid.value_or(*def)};
}

}  // namespace detail

inline int cmd_pde(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!c.pde) throw Error(Errc::ConfigError, "no pde selection");
    const PdeSelection& sel = *c.pde;
    const detail::PdeCase pc = detail::pde_case(sel, c.grid);
    const double tol = c.tol.value_or(1e-8);
    ResidualReport r;
    if (sel.system == "syst1") {
      if (!pc.ab) throw Error(Errc::ConfigError, "syst1 needs a solution-family field triple (it fixes the chart)");
      const auto [a, b] = *pc.ab;
      const IsotropicChart chart =
          solution_chart(a, b, parse_kappa(sel.kappa), Interval::closed_range(pc.grid.v_min, pc.grid.v_max));
      r = residual_syst1(pc.fields, chart, pc.grid, tol);
    } else if (sel.system == "fund") {
      r = residual_fund(pc.fields, sel.epsilon, pc.grid, tol);
    } else if (sel.system == "degenerate") {
      r = residual_degenerate(pc.fields, pc.grid, tol);
    } else {
      throw Error(Errc::ConfigError, "unknown system '" + sel.system + "'");
    }
    const nlohmann::json report = {{"config", c.raw},
                                   {"selection",
                                    {{"system", sel.system},
                                     {"solution", sel.solution},
                                     {"kappa", sel.kappa},
                                     {"epsilon", sel.epsilon}}},
                                   {"report", detail::residual_json(r)}};
    out << report.dump(2) << '\n';
    if (!c.out.empty())
      detail::write_file(detail::out_dir(c) / "residuals.json", [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    return r.pass ? static_cast<int>(kPass) : static_cast<int>(kPropertyFailure);
  });
}

/// Prints the acceptance table; exit 0 iff every criterion passes.
inline int cmd_selfcheck(std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    int failed = 0;
    for (const auto& cr : run_acceptance()) {
      out << format_criterion(cr) << '\n';
      failed += cr.pass ? 0 : 1;
    }
    out << failed << " of 10 criteria failed\n";
    return failed == 0 ? static_cast<int>(kPass) : static_cast<int>(kPropertyFailure);
  });
}

}  // namespace meridian::cli
