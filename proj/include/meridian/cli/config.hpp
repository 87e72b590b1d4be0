#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "meridian/error.hpp"
#include "meridian/families.hpp"
#include "meridian/grid.hpp"

namespace meridian::cli {

using nlohmann::json;

enum ExitCode : int { kPass = 0, kPropertyFailure = 1, kConfigError = 2, kNumericFailure = 3 };

/// Which natural PDE system to check, and on which fields.
struct PdeSelection {
  std::string system = "syst1";      // syst1 | fund | degenerate
  std::string solution = "example1";  // example1 | example2 | family(a,b) | separable
  std::string kappa = "sin-offset:2";
  int epsilon = -1;  // fund only
};

struct RunConfig {
  std::optional<FamilySpec> family;
  std::optional<Grid2> grid;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out;
  std::optional<PdeSelection> pde;
  json raw = json::object();  // echoed into reports
};

namespace detail {

inline double number(const json& j, const char* key) {
  if (!j.is_number()) throw Error(Errc::ConfigError, std::string("'") + key + "' must be a number");
  return j.get<double>();
}

inline int sign(const json& j, const char* key) {
  const double s = number(j, key);
  if (s != 1.0 && s != -1.0) throw Error(Errc::ConfigError, std::string("'") + key + "' must be +1 or -1");
  return static_cast<int>(s);
}

inline std::string text(const json& j, const char* key) {
  if (!j.is_string()) throw Error(Errc::ConfigError, std::string("'") + key + "' must be a string");
  return j.get<std::string>();
}

}  // namespace detail

/// {"tag": "...", "params": {a, b, c, K, a1, a2, kappa, f0, sign_g, sign_phi,
/// inner_sign, u_min, u_max, h}}; unknown keys are rejected.
inline FamilySpec family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tag")) throw Error(Errc::ConfigError, "family needs a 'tag'");
  FamilySpec s;
  s.tag = parse_family_tag(detail::text(j.at("tag"), "tag"));
  if (j.contains("directrix")) s.directrix = detail::text(j.at("directrix"), "directrix");
  for (const auto& [k, v] : j.items())
    if (k != "tag" && k != "params" && k != "directrix") throw Error(Errc::ConfigError, "unknown family key '" + k + "'");
  if (!j.contains("params")) return s;
  const json& p = j.at("params");
  if (!p.is_object()) throw Error(Errc::ConfigError, "'params' must be an object");
  for (const auto& [k, v] : p.items()) {
    const char* key = k.c_str();
    if (k == "a") s.a = detail::number(v, key);
    else if (k == "b") s.b = detail::number(v, key);
    else if (k == "c") s.c = detail::number(v, key);
    else if (k == "K") s.K = detail::number(v, key);
    else if (k == "a1") s.a1 = detail::number(v, key);
    else if (k == "a2") s.a2 = detail::number(v, key);
    else if (k == "kappa") s.kappa = detail::number(v, key);
    else if (k == "f0") s.f0 = detail::number(v, key);
    else if (k == "h") s.h = detail::number(v, key);
    else if (k == "u_min") s.u_min = detail::number(v, key);
    else if (k == "u_max") s.u_max = detail::number(v, key);
    else if (k == "sign_g") s.sign_g = detail::sign(v, key);
    else if (k == "sign_phi") s.sign_phi = detail::sign(v, key);
    else if (k == "inner_sign") s.inner_sign = detail::sign(v, key);
    else throw Error(Errc::ConfigError, "unknown parameter '" + k + "'");
  }
  if (!(s.h > 0.0)) throw Error(Errc::ConfigError, "'h' must be positive");
  return s;
}

inline json family_to_json(const FamilySpec& s) {
  json p = {{"a", s.a},   {"b", s.b},   {"c", s.c},         {"K", s.K},          {"a1", s.a1},
            {"a2", s.a2}, {"kappa", s.kappa}, {"f0", s.f0}, {"sign_g", s.sign_g}, {"sign_phi", s.sign_phi},
            {"inner_sign", s.inner_sign}, {"h", s.h}};
  if (s.u_min) p["u_min"] = *s.u_min;
  if (s.u_max) p["u_max"] = *s.u_max;
  json j = {{"tag", std::string(to_string(s.tag))}, {"params", p}};
  if (!s.directrix.empty()) j["directrix"] = s.directrix;
  return j;
}

inline Grid2 grid_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::ConfigError, "'grid' must be an object");
  Grid2 g;
  for (const auto& [k, v] : j.items()) {
    const char* key = k.c_str();
    if (k == "u_min") g.u_min = detail::number(v, key);
    else if (k == "u_max") g.u_max = detail::number(v, key);
    else if (k == "v_min") g.v_min = detail::number(v, key);
    else if (k == "v_max") g.v_max = detail::number(v, key);
    else if (k == "nu" || k == "nv") {
      if (!v.is_number_integer()) throw Error(Errc::ConfigError, "'" + k + "' must be an integer");
      (k == "nu" ? g.nu : g.nv) = v.get<int>();
    } else
      throw Error(Errc::ConfigError, "unknown grid key '" + k + "'");
  }
  g.validate();
  return g;
}

inline json grid_to_json(const Grid2& g) {
  return {{"u_min", g.u_min}, {"u_max", g.u_max}, {"nu", g.nu}, {"v_min", g.v_min}, {"v_max", g.v_max}, {"nv", g.nv}};
}

inline PdeSelection pde_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::ConfigError, "'pde' must be an object");
  PdeSelection p;
  for (const auto& [k, v] : j.items()) {
    if (k == "system") p.system = detail::text(v, "system");
    else if (k == "solution") p.solution = detail::text(v, "solution");
    else if (k == "kappa") p.kappa = detail::text(v, "kappa");
    else if (k == "epsilon") p.epsilon = detail::sign(v, "epsilon");
    else throw Error(Errc::ConfigError, "unknown pde key '" + k + "'");
  }
  return p;
}

inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::ConfigError, "config must be a JSON object");
  RunConfig c;
  c.raw = j;
  for (const auto& [k, v] : j.items()) {
    if (k == "family") c.family = family_from_json(v);
    else if (k == "directrix") continue;  // applied after the family is read
    else if (k == "grid") c.grid = grid_from_json(v);
    else if (k == "tol") {
      c.tol = detail::number(v, "tol");
      if (!(*c.tol > 0.0)) throw Error(Errc::ConfigError, "'tol' must be positive");
    } else if (k == "format") c.format = detail::text(v, "format");
    else if (k == "out") c.out = detail::text(v, "out");
    else if (k == "pde") c.pde = pde_from_json(v);
    else throw Error(Errc::ConfigError, "unknown config key '" + k + "'");
  }
  if (j.contains("directrix")) {
    if (!j.contains("family")) throw Error(Errc::ConfigError, "'directrix' needs a 'family'");
    c.family->directrix = detail::text(j.at("directrix"), "directrix");
  }
  if (c.format != "csv" && c.format != "json" && c.format != "obj")
    throw Error(Errc::ConfigError, "format must be csv, json or obj");
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace meridian::cli
