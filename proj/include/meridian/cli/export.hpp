#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "meridian/grid.hpp"
#include "meridian/surface.hpp"

namespace meridian::cli {

/// Per-vertex data written by generate/export.
struct SurfaceSample {
  double u = 0.0, v = 0.0;
  std::array<double, 4> x{};
  double E = 0.0, F = 0.0, G = 0.0;
  double K = 0.0, Kperp = 0.0;
  double h1 = 0.0, h2 = 0.0, Hnormsq = 0.0;
  double DH_max = 0.0;
  double DH0_max = std::numeric_limits<double>::quiet_NaN();  // undefined where H = 0
  CausalClass H_causal = CausalClass::Zero;
};

/// Row-major in u (outer) then v.
inline std::vector<SurfaceSample> sample_surface(const MeridianSurface& s, const Grid2& g) {
  g.validate();
  std::vector<SurfaceSample> out(g.size());
  parallel_for(g.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k / static_cast<std::size_t>(g.nv)), j = static_cast<int>(k % static_cast<std::size_t>(g.nv));
    SurfaceSample& r = out[k];
    r.u = g.u(i);
    r.v = g.v(j);
    const Vec4M z = evaluate(s, r.u, r.v).z;
    r.x = z.x;
    const InvariantReport inv = invariant_report(s, r.u, r.v);
    r.E = inv.E, r.F = inv.F, r.G = inv.G;
    r.K = inv.K, r.Kperp = inv.K_perp;
    r.h1 = inv.H_closed.n1, r.h2 = inv.H_closed.n2;
    r.Hnormsq = inv.H_norm_sq;
    r.H_causal = inv.H_class;
    r.DH_max = normal_derivative_H(s, r.u, r.v).jet.max_abs();
    try {
      r.DH0_max = normal_derivative_H0(s, r.u, r.v).jet.max_abs();
    } catch (const Error& e) {
      if (e.code() != Errc::MinimalPoint) throw;
    }
  });
  return out;
}

inline const char* kCsvHeader = "u,v,x1,x2,x3,x4,E,F,G,K,Kperp,h1,h2,Hnormsq,DH_max,DH0_max,H_causal";

inline std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<SurfaceSample>& samples) {
  os << kCsvHeader << '\n';
  for (const auto& r : samples) {
    for (double x : {r.u, r.v, r.x[0], r.x[1], r.x[2], r.x[3], r.E, r.F, r.G, r.K, r.Kperp, r.h1, r.h2, r.Hnormsq,
                     r.DH_max, r.DH0_max})
      os << fmt_num(x) << ',';
    os << to_string(r.H_causal) << '\n';
  }
}

/// Vertices (x1, x4, x2): e4 is the y-up axis. Quads over the grid, 1-based.
inline void write_obj(std::ostream& os, const std::vector<SurfaceSample>& samples, const Grid2& g) {
  os << "# meridian surface " << g.nu << "x" << g.nv << "\n";
  for (const auto& r : samples) os << "v " << fmt_num(r.x[0]) << ' ' << fmt_num(r.x[3]) << ' ' << fmt_num(r.x[1]) << '\n';
  auto id = [&g](int i, int j) { return i * g.nv + j + 1; };
  for (int i = 0; i + 1 < g.nu; ++i)
    for (int j = 0; j + 1 < g.nv; ++j)
      os << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
}

inline nlohmann::json samples_to_json(const std::vector<SurfaceSample>& samples) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : samples) {
    nlohmann::json o = {{"u", r.u},   {"v", r.v},     {"x", r.x},   {"E", r.E},   {"F", r.F},
                        {"G", r.G},   {"K", r.K},     {"Kperp", r.Kperp}, {"h1", r.h1}, {"h2", r.h2},
                        {"Hnormsq", r.Hnormsq}, {"DH_max", r.DH_max}, {"H_causal", to_string(r.H_causal)}};
    o["DH0_max"] = std::isnan(r.DH0_max) ? nlohmann::json(nullptr) : nlohmann::json(r.DH0_max);
    arr.push_back(std::move(o));
  }
  return arr;
}

}  // namespace meridian::cli
