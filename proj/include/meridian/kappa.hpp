#pragma once

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "meridian/error.hpp"
#include "meridian/jet.hpp"
#include "meridian/spherical_curve.hpp"

namespace meridian {

inline SmoothFn1 kappa_constant(double k) {
  std::ostringstream os;
  os << "const:" << k;
  return {[k](double) { return Jet3::constant(k); }, Interval::real_line(), os.str()};
}

/// kappa(v) = c + sin v.
inline SmoothFn1 kappa_sin_offset(double c) {
  std::ostringstream os;
  os << "sin-offset:" << c;
  return {[c](double v) { return c + sin(Jet3::variable(v)); }, Interval::real_line(), os.str()};
}

/// kappa(v) = sum_k c_k v^k.
inline SmoothFn1 kappa_poly(std::vector<double> coeffs) {
  std::ostringstream os;
  os << "poly:";
  for (std::size_t k = 0; k < coeffs.size(); ++k) os << (k ? "," : "") << coeffs[k];
  return {[coeffs](double v) {
            // Horner on jets
            Jet3 acc;
            const Jet3 x = Jet3::variable(v);
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
          },
          Interval::real_line(), os.str()};
}

namespace detail {

inline double parse_number(const std::string& s, const std::string& ctx) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x))
    throw Error(Errc::ConfigError, "bad number '" + s + "' in " + ctx);
  return x;
}

}  // namespace detail

/// Parses "const:k", "sin-offset:c" or "poly:c0,c1,...".
inline SmoothFn1 parse_kappa(const std::string& sel) {
  const auto colon = sel.find(':');
  if (colon == std::string::npos) throw Error(Errc::ConfigError, "kappa selector needs 'kind:args': " + sel);
  const std::string kind = sel.substr(0, colon), args = sel.substr(colon + 1);
  if (kind == "const") return kappa_constant(detail::parse_number(args, sel));
  if (kind == "sin-offset") return kappa_sin_offset(detail::parse_number(args, sel));
  if (kind == "poly") {
    std::vector<double> c;
    std::size_t pos = 0;
    while (pos <= args.size()) {
      const auto comma = args.find(',', pos);
      const std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      c.push_back(detail::parse_number(tok, sel));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return kappa_poly(std::move(c));
  }
  throw Error(Errc::ConfigError, "unknown kappa selector kind '" + kind + "'");
}

/// Directrix from a selector: "great-circle", "latitude:<k>" (circle of
/// constant curvature k), or "frenet:<kappa selector>" integrated over v_range.
inline SphericalCurve make_directrix(const std::string& sel, Interval v_range, double h = 1e-3) {
  if (sel == "great-circle") return SphericalCurve::great_circle();
  if (sel.rfind("latitude:", 0) == 0)
    return SphericalCurve::with_constant_curvature(detail::parse_number(sel.substr(9), sel));
  if (sel.rfind("frenet:", 0) == 0) {
    const SmoothFn1 k = parse_kappa(sel.substr(7));
    return SphericalCurve::from_curvature(k, v_range, h);
  }
  throw Error(Errc::ConfigError, "unknown directrix selector '" + sel + "'");
}

}  // namespace meridian
