#pragma once

// Second-order forward-mode automatic differentiation over at most
// kMaxDim coordinates. Metric families are written once as templates and
// instantiated on double, Jet and Series.

#include <array>
#include <cmath>

namespace rgb {

inline constexpr int kMaxDim = 4;

struct Jet {
  double v = 0.0;
  std::array<double, kMaxDim> d{};
  std::array<std::array<double, kMaxDim>, kMaxDim> h{};

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  static Jet variable(double value, int index) {
    Jet j(value);
    j.d[index] = 1.0;
    return j;
  }
};

namespace detail {

// f(a) given f(a.v), f'(a.v), f''(a.v).
inline Jet chain(const Jet& a, double f0, double f1, double f2) {
  Jet r(f0);
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = f1 * a.d[i];
  for (int i = 0; i < kMaxDim; ++i)
    for (int j = 0; j < kMaxDim; ++j)
      r.h[i][j] = f1 * a.h[i][j] + f2 * a.d[i] * a.d[j];
  return r;
}

}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r(a.v + b.v);
  for (int i = 0; i < kMaxDim; ++i) {
    r.d[i] = a.d[i] + b.d[i];
    for (int j = 0; j < kMaxDim; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
  }
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r(-a.v);
  for (int i = 0; i < kMaxDim; ++i) {
    r.d[i] = -a.d[i];
    for (int j = 0; j < kMaxDim; ++j) r.h[i][j] = -a.h[i][j];
  }
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.v * b.v);
  for (int i = 0; i < kMaxDim; ++i) {
    r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    for (int j = 0; j < kMaxDim; ++j)
      r.h[i][j] = a.h[i][j] * b.v + a.v * b.h[i][j] + a.d[i] * b.d[j] + b.d[i] * a.d[j];
  }
  return r;
}

inline Jet reciprocal(const Jet& a) {
  const double inv = 1.0 / a.v;
  return detail::chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet& operator*=(Jet& a, const Jet& b) { return a = a * b; }

inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return detail::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e, e);
}
inline Jet log(const Jet& a) { return detail::chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sin(const Jet& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::chain(a, s, c, -s);
}
inline Jet cos(const Jet& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::chain(a, c, -s, -c);
}
inline Jet pow(const Jet& a, double p) {
  const double f = std::pow(a.v, p);
  return detail::chain(a, f, p * f / a.v, p * (p - 1.0) * f / (a.v * a.v));
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }

}  // namespace rgb
