#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "meridian/error.hpp"

namespace meridian {

/// Default tolerance on <v,v> used by causal classification.
inline constexpr double kCausalTol = 1e-10;

/// A 4-vector over an arbitrary scalar ring. Vec4M is the plain real case;
/// Vec4<BiJet<N>> carries a vector field together with its partials.
template <class T>
struct Vec4 {
  std::array<T, 4> x{};

  constexpr T& operator[](std::size_t i) { return x[i]; }
  constexpr const T& operator[](std::size_t i) const { return x[i]; }

  friend constexpr Vec4 operator+(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = a.x[i] + b.x[i];
    return r;
  }
  friend constexpr Vec4 operator-(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = a.x[i] - b.x[i];
    return r;
  }
  friend constexpr Vec4 operator-(const Vec4& a) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = -a.x[i];
    return r;
  }
  template <class S>
  friend constexpr Vec4 operator*(const S& s, const Vec4& a) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = s * a.x[i];
    return r;
  }
  template <class S>
  friend constexpr Vec4 operator*(const Vec4& a, const S& s) {
    return s * a;
  }
  template <class S>
  friend constexpr Vec4 operator/(const Vec4& a, const S& s) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = a.x[i] / s;
    return r;
  }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;
};

using Vec4M = Vec4<double>;

inline constexpr Vec4M e1{{1.0, 0.0, 0.0, 0.0}};
inline constexpr Vec4M e2{{0.0, 1.0, 0.0, 0.0}};
inline constexpr Vec4M e3{{0.0, 0.0, 1.0, 0.0}};
inline constexpr Vec4M e4{{0.0, 0.0, 0.0, 1.0}};

/// <a,b> = a1 b1 + a2 b2 + a3 b3 - a4 b4.
template <class T>
constexpr T minkowski_inner(const Vec4<T>& a, const Vec4<T>& b) {
  return a.x[0] * b.x[0] + a.x[1] * b.x[1] + a.x[2] * b.x[2] - a.x[3] * b.x[3];
}

inline double max_abs(const Vec4M& v) {
  double m = 0.0;
  for (double c : v.x) m = std::max(m, std::abs(c));
  return m;
}

enum class CausalClass { Spacelike, Timelike, Lightlike, Zero };

constexpr const char* to_string(CausalClass c) noexcept {
  switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Zero: return "zero";
  }
  return "?";
}

inline CausalClass causal_character(const Vec4M& v, double tol = kCausalTol) {
  const double q = minkowski_inner(v, v);
  if (q > tol) return CausalClass::Spacelike;
  if (q < -tol) return CausalClass::Timelike;
  if (max_abs(v) > tol) return CausalClass::Lightlike;
  return CausalClass::Zero;
}

struct LabeledVector {
  std::string label;
  Vec4M vec;
};

struct GramEntry {
  std::string first;
  std::string second;
  double measured = 0.0;
  double target = 0.0;
};

/// Pairwise inner products of a frame against a target Gram matrix.
struct FrameReport {
  std::vector<GramEntry> entries;  // unordered pairs, diagonal included
  double max_deviation = 0.0;
  std::string worst_first;
  std::string worst_second;
  bool pass = false;
};

/// `target_gram` is row-major n x n.
inline FrameReport verify_frame(std::span<const LabeledVector> vectors,
                                std::span<const double> target_gram, double tol) {
  const std::size_t n = vectors.size();
  if (n < 2 || n > 4) throw Error(Errc::SizeMismatch, "frame must have 2-4 vectors");
  if (target_gram.size() != n * n) throw Error(Errc::SizeMismatch, "Gram matrix size does not match frame");
  FrameReport report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      GramEntry e{vectors[i].label, vectors[j].label,
                  minkowski_inner(vectors[i].vec, vectors[j].vec), target_gram[i * n + j]};
      const double dev = std::abs(e.measured - e.target);
      if (report.entries.empty() || dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_first = e.first;
        report.worst_second = e.second;
      }
      report.entries.push_back(std::move(e));
    }
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

}  // namespace meridian
