#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "meridian/error.hpp"
#include "meridian/jet.hpp"
#include "meridian/ode.hpp"

namespace meridian {

/// Jet of g from the jet of f on the timelike branch fdot^2 - gdot^2 = -1:
/// gdot = s sqrt(1 + fdot^2), gddot = fdot fddot / gdot,
/// g''' = (fddot^2 + fdot f''' - gddot^2) / gdot. The value is supplied.
inline Jet3 g_jet_from_f(const Jet3& f, double g_value, int sign_g) {
  const double g1 = sign_g * std::sqrt(1.0 + f.d1 * f.d1);
  const double g2 = f.d1 * f.d2 / g1;
  const double g3 = (f.d2 * f.d2 + f.d1 * f.d3 - g2 * g2) / g1;
  return {g_value, g1, g2, g3};
}

/// Meridian curve u -> (f(u), g(u)) with f > 0 and fdot^2 - gdot^2 = -1.
///
/// f is always given as a jet evaluator. g is either given in closed form
/// (full jet) or by its value only, in which case its derivatives follow
/// from the constraint via g_jet_from_f.
class MeridianProfile {
 public:
  using JetFn = std::function<Jet3(double)>;
  using ValueFn = std::function<double(double)>;

  MeridianProfile(JetFn f, JetFn g, Interval domain, int sign_g, std::string label)
      : f_(std::move(f)), g_jet_(std::move(g)), domain_(domain), sign_g_(sign_g), label_(std::move(label)) {}

  MeridianProfile(JetFn f, ValueFn g_value, Interval domain, int sign_g, std::string label)
      : f_(std::move(f)), g_value_(std::move(g_value)), domain_(domain), sign_g_(sign_g), label_(std::move(label)) {}

  Jet3 f(double u) const {
    check(u);
    return f_(u);
  }

  Jet3 g(double u) const {
    check(u);
    if (g_jet_) return g_jet_(u);
    return g_jet_from_f(f_(u), g_value_(u), sign_g_);
  }

  const Interval& domain() const { return domain_; }
  bool contains(double u) const { return domain_.contains(u); }
  int sign_g() const { return sign_g_; }
  const std::string& label() const { return label_; }

  /// Set when the profile came from an ODE integration that stopped before
  /// the requested end of the interval.
  const std::optional<std::string>& integration_note() const { return note_; }
  MeridianProfile& with_integration_note(std::string note) {
    note_ = std::move(note);
    return *this;
  }

  /// fdot^2 - gdot^2 + 1 at u (zero on a valid profile).
  double constraint_residual(double u) const {
    const Jet3 fj = f(u), gj = g(u);
    return fj.d1 * fj.d1 - gj.d1 * gj.d1 + 1.0;
  }

 private:
  void check(double u) const {
    if (!domain_.contains(u)) {
      std::ostringstream os;
      os << "u=" << u << " outside profile domain " << domain_.describe() << " of " << label_;
      throw Error(Errc::OutOfDomain, os.str());
    }
  }

  JetFn f_;
  JetFn g_jet_;
  ValueFn g_value_;
  Interval domain_;
  int sign_g_ = 1;
  std::string label_;
  std::optional<std::string> note_;
};

}  // namespace meridian
