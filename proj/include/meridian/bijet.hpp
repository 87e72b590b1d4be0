#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "meridian/jet.hpp"
#include "meridian/minkowski.hpp"

namespace meridian {

/// Truncated bivariate Taylor expansion in (u, v) to total order N.
///
/// Coefficients are stored normalized, c(i,j) = d^i_u d^j_v F / (i! j!), so
/// that products are plain truncated Cauchy products. Differentiation lowers
/// the order, which keeps the number of trustworthy derivatives visible in
/// the type: a field built from order-3 profile jets and differentiated twice
/// is a BiJet<1>.
template <int N>
class BiJet {
  static_assert(N >= 0);

 public:
  static constexpr int order = N;
  static constexpr std::size_t size = static_cast<std::size_t>((N + 1) * (N + 2) / 2);

  constexpr BiJet() = default;
  constexpr BiJet(double c) { c_[0] = c; }  // NOLINT: implicit lift of constants

  static constexpr std::size_t index(int i, int j) {
    const int k = i + j;
    return static_cast<std::size_t>(k * (k + 1) / 2 + j);
  }

  constexpr double coeff(int i, int j) const { return c_[index(i, j)]; }
  constexpr double& coeff(int i, int j) { return c_[index(i, j)]; }

  constexpr double value() const { return c_[0]; }

  /// d^i_u d^j_v at the expansion point.
  constexpr double partial(int i, int j) const { return coeff(i, j) * factorial(i) * factorial(j); }

  /// Lifts a jet in u (orders above N dropped).
  static constexpr BiJet from_u(const Jet3& j) {
    BiJet r;
    for (int k = 0; k <= N && k <= 3; ++k) r.coeff(k, 0) = j[k] / factorial(k);
    return r;
  }

  /// Lifts a jet in v (orders above N dropped).
  static constexpr BiJet from_v(const Jet3& j) {
    BiJet r;
    for (int k = 0; k <= N && k <= 3; ++k) r.coeff(0, k) = j[k] / factorial(k);
    return r;
  }

  template <int M>
  constexpr BiJet<M> truncate() const {
    static_assert(M <= N);
    BiJet<M> r;
    for (int k = 0; k <= M; ++k)
      for (int j = 0; j <= k; ++j) r.coeff(k - j, j) = coeff(k - j, j);
    return r;
  }

  constexpr BiJet<N - 1> du() const
    requires(N >= 1)
  {
    BiJet<N - 1> r;
    for (int k = 0; k <= N - 1; ++k)
      for (int j = 0; j <= k; ++j) {
        const int i = k - j;
        r.coeff(i, j) = (i + 1) * coeff(i + 1, j);
      }
    return r;
  }

  constexpr BiJet<N - 1> dv() const
    requires(N >= 1)
  {
    BiJet<N - 1> r;
    for (int k = 0; k <= N - 1; ++k)
      for (int j = 0; j <= k; ++j) {
        const int i = k - j;
        r.coeff(i, j) = (j + 1) * coeff(i, j + 1);
      }
    return r;
  }

  constexpr BiJet& operator+=(const BiJet& o) {
    for (std::size_t k = 0; k < size; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr BiJet& operator-=(const BiJet& o) {
    for (std::size_t k = 0; k < size; ++k) c_[k] -= o.c_[k];
    return *this;
  }

  friend constexpr BiJet operator+(BiJet a, const BiJet& b) { return a += b; }
  friend constexpr BiJet operator-(BiJet a, const BiJet& b) { return a -= b; }
  friend constexpr BiJet operator-(const BiJet& a) {
    BiJet r;
    for (std::size_t k = 0; k < size; ++k) r.c_[k] = -a.c_[k];
    return r;
  }
  friend constexpr BiJet operator*(double s, const BiJet& a) {
    BiJet r;
    for (std::size_t k = 0; k < size; ++k) r.c_[k] = s * a.c_[k];
    return r;
  }
  friend constexpr BiJet operator*(const BiJet& a, double s) { return s * a; }
  friend constexpr BiJet operator/(const BiJet& a, double s) { return (1.0 / s) * a; }

  friend constexpr BiJet operator*(const BiJet& a, const BiJet& b) {
    BiJet r;
    for (int k = 0; k <= N; ++k)
      for (int j = 0; j <= k; ++j) {
        const int i = k - j;
        double acc = 0.0;
        for (int p = 0; p <= i; ++p)
          for (int q = 0; q <= j; ++q) acc += a.coeff(p, q) * b.coeff(i - p, j - q);
        r.coeff(i, j) = acc;
      }
    return r;
  }

  /// Applies a univariate function given its derivatives F^(k) at value(),
  /// k = 0..N.
  constexpr BiJet compose(const std::array<double, N + 1>& F) const {
    BiJet delta = *this;
    delta.c_[0] = 0.0;
    BiJet result(F[0]);
    BiJet power(1.0);
    for (int k = 1; k <= N; ++k) {
      power = power * delta;
      result += (F[static_cast<std::size_t>(k)] / factorial(k)) * power;
    }
    return result;
  }

 private:
  static constexpr double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
  }

  std::array<double, size> c_{};
};

template <int N>
BiJet<N> recip(const BiJet<N>& a) {
  const double x = a.value();
  std::array<double, N + 1> F{};
  double p = 1.0 / x;
  for (int k = 0; k <= N; ++k) {
    F[static_cast<std::size_t>(k)] = p;
    p *= -(k + 1) / x;
  }
  return a.compose(F);
}

template <int N>
BiJet<N> operator/(const BiJet<N>& a, const BiJet<N>& b) {
  return a * recip(b);
}

/// x^p expanded about a positive value.
template <int N>
BiJet<N> pow(const BiJet<N>& a, double p) {
  const double x = a.value();
  std::array<double, N + 1> F{};
  double coef = 1.0;
  for (int k = 0; k <= N; ++k) {
    F[static_cast<std::size_t>(k)] = coef * std::pow(x, p - k);
    coef *= (p - k);
  }
  return a.compose(F);
}

template <int N>
BiJet<N> sqrt(const BiJet<N>& a) {
  return pow(a, 0.5);
}

// Vector fields: component-wise calculus on Vec4<BiJet<N>>.

template <int N>
using VecField = Vec4<BiJet<N>>;

template <int N>
VecField<N - 1> du(const VecField<N>& f) {
  VecField<N - 1> r;
  for (std::size_t i = 0; i < 4; ++i) r.x[i] = f.x[i].du();
  return r;
}

template <int N>
VecField<N - 1> dv(const VecField<N>& f) {
  VecField<N - 1> r;
  for (std::size_t i = 0; i < 4; ++i) r.x[i] = f.x[i].dv();
  return r;
}

template <int M, int N>
VecField<M> truncate(const VecField<N>& f) {
  VecField<M> r;
  for (std::size_t i = 0; i < 4; ++i) r.x[i] = f.x[i].template truncate<M>();
  return r;
}

template <int N>
Vec4M value(const VecField<N>& f) {
  Vec4M r;
  for (std::size_t i = 0; i < 4; ++i) r.x[i] = f.x[i].value();
  return r;
}

template <int N>
Vec4M partial(const VecField<N>& f, int i, int j) {
  Vec4M r;
  for (std::size_t k = 0; k < 4; ++k) r.x[k] = f.x[k].partial(i, j);
  return r;
}

template <int N>
VecField<N> lift(const Vec4M& c) {
  VecField<N> r;
  for (std::size_t i = 0; i < 4; ++i) r.x[i] = BiJet<N>(c.x[i]);
  return r;
}

}  // namespace meridian
