#pragma once

// Truncated Taylor series in one variable. A double converts to a
// constant series; binary operations keep the longer truncation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rgb {

class Series {
 public:
  Series() : c_(1, 0.0) {}
  Series(double constant) : c_(1, constant) {}  // NOLINT(google-explicit-constructor)
  explicit Series(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
  }

  /// The variable x itself, truncated after x^order.
  static Series variable(int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    if (order >= 1) c[1] = 1.0;
    return Series(std::move(c));
  }

  std::size_t size() const { return c_.size(); }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }
  double& coeff(std::size_t k) { return c_.at(k); }
  const std::vector<double>& coeffs() const { return c_; }

  double evaluate(double x) const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

 private:
  std::vector<double> c_;
};

inline Series operator+(const Series& a, const Series& b) {
  std::vector<double> c(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return Series(std::move(c));
}

inline Series operator-(const Series& a) {
  std::vector<double> c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = -a[k];
  return Series(std::move(c));
}

inline Series operator-(const Series& a, const Series& b) { return a + (-b); }

inline Series operator*(const Series& a, const Series& b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < std::min(a.size(), n); ++i)
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return Series(std::move(c));
}

inline Series operator/(const Series& a, const Series& b) {
  if (b[0] == 0.0) throw std::domain_error("series division by a series vanishing at 0");
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> q(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b[0];
  }
  return Series(std::move(q));
}

inline Series& operator+=(Series& a, const Series& b) { return a = a + b; }
inline Series& operator-=(Series& a, const Series& b) { return a = a - b; }
inline Series& operator*=(Series& a, const Series& b) { return a = a * b; }

inline Series sqrt(const Series& a) {
  if (a[0] <= 0.0) throw std::domain_error("series sqrt needs a positive constant term");
  const std::size_t n = a.size();
  std::vector<double> s(n, 0.0);
  s[0] = std::sqrt(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = a[k];
    for (std::size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc / (2.0 * s[0]);
  }
  return Series(std::move(s));
}

inline Series exp(const Series& a) {
  const std::size_t n = a.size();
  std::vector<double> e(n, 0.0);
  e[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return Series(std::move(e));
}

inline Series log(const Series& a) {
  if (a[0] <= 0.0) throw std::domain_error("series log needs a positive constant term");
  const std::size_t n = a.size();
  std::vector<double> l(n, 0.0);
  l[0] = std::log(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = static_cast<double>(k) * a[k];
    for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) * l[j] * a[k - j];
    l[k] = acc / (static_cast<double>(k) * a[0]);
  }
  return Series(std::move(l));
}

namespace detail {

inline void sin_cos(const Series& a, std::vector<double>& s, std::vector<double>& c) {
  const std::size_t n = a.size();
  s.assign(n, 0.0);
  c.assign(n, 0.0);
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double ds = 0.0, dc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      ds += static_cast<double>(j) * a[j] * c[k - j];
      dc -= static_cast<double>(j) * a[j] * s[k - j];
    }
    s[k] = ds / static_cast<double>(k);
    c[k] = dc / static_cast<double>(k);
  }
}

}  // namespace detail

inline Series sin(const Series& a) {
  std::vector<double> s, c;
  detail::sin_cos(a, s, c);
  return Series(std::move(s));
}

inline Series cos(const Series& a) {
  std::vector<double> s, c;
  detail::sin_cos(a, s, c);
  return Series(std::move(c));
}

inline Series pow(const Series& a, double p) { return exp(log(a) * Series(p)); }

inline double value_of(const Series& s) { return s[0]; }

}  // namespace rgb
