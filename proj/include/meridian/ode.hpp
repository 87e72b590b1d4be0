#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "meridian/error.hpp"
#include "meridian/jet.hpp"

namespace meridian {

/// One classical Runge-Kutta step for y' = rhs(y) (autonomous).
template <std::size_t D, class Rhs>
std::array<double, D> rk4_step(const Rhs& rhs, const std::array<double, D>& y, double h) {
  auto axpy = [](const std::array<double, D>& a, double s, const std::array<double, D>& b) {
    std::array<double, D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const auto k1 = rhs(y);
  const auto k2 = rhs(axpy(y, 0.5 * h, k1));
  const auto k3 = rhs(axpy(y, 0.5 * h, k2));
  const auto k4 = rhs(axpy(y, h, k3));
  std::array<double, D> r;
  for (std::size_t i = 0; i < D; ++i) r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return r;
}

inline constexpr double kPhiOverflowBound = 1e12;

enum class StopReason { Completed, LeftDomain, Overflow };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::LeftDomain: return "left generating-function domain";
    case StopReason::Overflow: return "generating function overflow";
  }
  return "?";
}

/// Jet of f at a state where f' = phi(f), by the chain rule:
/// f'' = phi' phi, f''' = (phi'' phi + phi'^2) phi.
inline Jet3 jet_from_generator(double f, const Jet3& phi) {
  return {f, phi.value, phi.d1 * phi.value, (phi.d2 * phi.value + phi.d1 * phi.d1) * phi.value};
}

/// Fixed-step solution of f' = phi(f) on a uniform grid.
class OdeSolution {
 public:
  OdeSolution(SmoothFn1 phi, double u0, double h, std::vector<double> values, StopReason reason,
              double requested_end, std::string note)
      : phi_(std::move(phi)),
        u0_(u0),
        h_(h),
        values_(std::move(values)),
        reason_(reason),
        requested_end_(requested_end),
        note_(std::move(note)) {}

  const SmoothFn1& phi() const { return phi_; }
  double step() const { return h_; }
  double u_start() const { return u0_; }
  double u_end() const { return u0_ + h_ * static_cast<double>(values_.size() - 1); }
  double requested_end() const { return requested_end_; }
  std::size_t size() const { return values_.size(); }
  double node_u(std::size_t k) const { return u0_ + h_ * static_cast<double>(k); }
  double node_value(std::size_t k) const { return values_[k]; }
  Jet3 node_jet(std::size_t k) const { return jet_from_generator(values_[k], phi_(values_[k])); }
  StopReason stop_reason() const { return reason_; }
  bool stopped_early() const { return reason_ != StopReason::Completed; }
  const std::string& note() const { return note_; }
  Interval domain() const { return Interval::closed_range(u0_, u_end()); }

  /// f(u) by a single partial RK4 step from the node at or below u.
  double value_at(double u) const {
    if (!domain().contains(u)) {
      std::ostringstream os;
      os << "u=" << u << " outside integrated range " << domain().describe();
      throw Error(Errc::OutOfDomain, os.str());
    }
    auto k = static_cast<std::size_t>(std::floor((u - u0_) / h_));
    k = std::min(k, values_.size() - 1);
    const double du = u - node_u(k);
    if (du == 0.0) return values_[k];
    auto rhs = [this](const std::array<double, 1>& y) { return std::array<double, 1>{phi_(y[0]).value}; };
    return rk4_step<1>(rhs, {values_[k]}, du)[0];
  }

  Jet3 jet_at(double u) const {
    const double f = value_at(u);
    return jet_from_generator(f, phi_(f));
  }

 private:
  SmoothFn1 phi_;
  double u0_;
  double h_;
  std::vector<double> values_;
  StopReason reason_;
  double requested_end_;
  std::string note_;
};

/// Integrates f' = phi(f), f(u_range.lo) = f0, forward to u_range.hi with
/// classical RK4 at fixed step h. Leaving phi's domain or |phi| exceeding
/// `overflow` ends the integration early; the reason is recorded on the
/// solution rather than thrown.
inline OdeSolution integrate_profile(const SmoothFn1& phi, double f0, Interval u_range, double h,
                                     double overflow = kPhiOverflowBound) {
  if (!(h > 0.0)) throw Error(Errc::StepSizeNonpositive, "step size must be positive");
  if (!phi.domain().contains(f0)) throw Error(Errc::InvalidInitialState, "f0 outside generating-function domain");
  double phi0 = 0.0;
  try {
    phi0 = phi(f0).value;
  } catch (const Error& e) {
    throw Error(Errc::InvalidInitialState, e.what());
  }
  if (!std::isfinite(phi0) || std::abs(phi0) > overflow)
    throw Error(Errc::InvalidInitialState, "generating function not finite at f0");
  if (u_range.empty()) throw Error(Errc::EmptyInterval, "empty integration range");

  const double span = u_range.hi - u_range.lo;
  auto steps = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
  const double step = steps == 0 ? h : span / static_cast<double>(steps);

  std::vector<double> values;
  values.reserve(steps + 1);
  values.push_back(f0);
  StopReason reason = StopReason::Completed;
  std::string note;

  struct Stop {
    StopReason reason;
    std::string what;
  };
  auto rhs = [&](const std::array<double, 1>& y) {
    if (!phi.domain().contains(y[0]) || !std::isfinite(y[0]))
      throw Stop{StopReason::LeftDomain, "state left generating-function domain"};
    double p = 0.0;
    try {
      p = phi(y[0]).value;
    } catch (const Error& e) {
      throw Stop{StopReason::LeftDomain, e.what()};
    }
    if (!std::isfinite(p)) throw Stop{StopReason::LeftDomain, "generating function not finite"};
    if (std::abs(p) > overflow) throw Stop{StopReason::Overflow, "|phi| exceeded overflow bound"};
    return std::array<double, 1>{p};
  };

  for (std::size_t k = 0; k < steps; ++k) {
    try {
      const double next = rk4_step<1>(rhs, {values.back()}, step)[0];
      rhs({next});  // the new node must itself be admissible
      values.push_back(next);
    } catch (const Stop& s) {
      reason = s.reason;
      std::ostringstream os;
      os << s.what << " near u=" << u_range.lo + step * static_cast<double>(k);
      note = os.str();
      break;
    }
  }
  return OdeSolution(phi, u_range.lo, step, std::move(values), reason, u_range.hi, std::move(note));
}

}  // namespace meridian
