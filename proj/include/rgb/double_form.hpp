#pragma once

// Double forms at a point: bilinear forms on pairs of multivectors that
// are antisymmetric in each slot, stored on strictly increasing
// multi-indices over an orthonormal frame {e_0, ..., e_{d-1}}.

#include <cstdint>
#include <span>
#include <vector>

namespace rgb {

inline constexpr int kMaxFormDim = 8;

class DoubleForm {
 public:
  /// Zero form of degree (p, q) over a d-dimensional frame.
  DoubleForm(int p, int q, int dim);

  /// The (1,1) identity form (the metric on an orthonormal frame).
  static DoubleForm metric(int dim);
  /// Degree (0,0) form with value 1.
  static DoubleForm unit(int dim);
  /// (1,1) form from a row-major d*d matrix (the symmetric part is not taken).
  static DoubleForm from_bilinear(int dim, std::span<const double> rowMajor);

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return dim_; }

  /// Signed evaluation on arbitrary index tuples (0-based). Repeated
  /// indices give 0. Throws std::invalid_argument on a length mismatch or
  /// an index outside [0, dim).
  double operator()(std::span<const int> I, std::span<const int> J) const;
  double operator()(std::initializer_list<int> I, std::initializer_list<int> J) const {
    return (*this)(std::span<const int>(I.begin(), I.size()), std::span<const int>(J.begin(), J.size()));
  }

  /// Assigns the value on (I, J); the antisymmetric extension follows.
  void set(std::span<const int> I, std::span<const int> J, double value);
  void set(std::initializer_list<int> I, std::initializer_list<int> J, double value) {
    set(std::span<const int>(I.begin(), I.size()), std::span<const int>(J.begin(), J.size()), value);
  }

  /// Value on increasing multi-indices given as bitmasks.
  double at_masks(std::uint32_t I, std::uint32_t J) const;
  void set_masks(std::uint32_t I, std::uint32_t J, double value);

  std::span<const double> coefficients() const { return coeffs_; }
  std::span<double> coefficients() { return coeffs_; }

  /// Largest coefficient magnitude.
  double max_abs() const;

  DoubleForm& operator+=(const DoubleForm& other);
  DoubleForm& operator-=(const DoubleForm& other);
  DoubleForm& operator*=(double s);

 private:
  std::size_t offset(std::uint32_t I, std::uint32_t J) const;

  int p_;
  int q_;
  int dim_;
  std::size_t colsQ_ = 0;
  std::vector<double> coeffs_;
};

DoubleForm operator+(DoubleForm a, const DoubleForm& b);
DoubleForm operator-(DoubleForm a, const DoubleForm& b);
DoubleForm operator*(double s, DoubleForm a);
DoubleForm operator*(DoubleForm a, double s);

/// Shuffle-convention product of a (p,q) and an (r,s) form.
DoubleForm df_product(const DoubleForm& a, const DoubleForm& b);

/// k-fold product; k == 0 gives the unit (0,0) form.
DoubleForm df_power(const DoubleForm& a, int k);

/// Product of all factors in order.
DoubleForm df_product_all(std::span<const DoubleForm> factors);

double df_eval(const DoubleForm& a, std::span<const int> I, std::span<const int> J);

/// Literal double permutation sum over S_d x S_d of signed products of
/// factor evaluations; the factor degrees must fill (d, d).
double permutation_contraction(std::span<const DoubleForm> factors);

/// permutation_contraction(f) / df_product_all(f)(full, full) for the given
/// degree multiset: the product of p_i! q_i! over the factors.
double contraction_ratio(std::span<const DoubleForm> factors);

}  // namespace rgb
