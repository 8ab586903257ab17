#pragma once

// Metrics in coordinates. ChartMetric is a Riemannian metric on a chart
// with optional exact derivatives; CollarMetric is the boundary-structured
// family
//
//     g = dx^2 / (alpha(y)^2 x^{2 eta}) + h_x / x^{2 beta},
//     h_x = w(x, y) h_B(y),
//
// on (0, x_max] x ∂M, with h_B the reference metric of the boundary
// descriptor and w a positive warp factor.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rgb/jet.hpp"
#include "rgb/quadrature.hpp"
#include "rgb/series.hpp"

namespace rgb {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

/// Metric components with first and second coordinate derivatives.
struct MetricJet {
  int dim = 0;
  Mat g;
  std::array<Mat, kMaxDim> dg;                        // dg[k] = d_k g
  std::array<std::array<Mat, kMaxDim>, kMaxDim> ddg;  // ddg[k][l] = d_k d_l g
};

/// Central-difference steps. The first coordinate is the boundary defining
/// function; its step scales with the coordinate value.
struct FdOptions {
  double boundary_relative_step = 1e-3;
  double interior_step = 1e-3;
};

class ChartMetric {
 public:
  using Evaluator = std::function<Mat(std::span<const double>)>;
  using JetEvaluator = std::function<MetricJet(std::span<const double>)>;

  ChartMetric(int dim, Evaluator eval, JetEvaluator jet = nullptr);

  int dim() const { return dim_; }
  Mat operator()(std::span<const double> p) const { return eval_(p); }
  bool has_exact_derivatives() const { return static_cast<bool>(jet_); }

  /// Exact derivatives when available, order-4 central differences otherwise.
  MetricJet jet(std::span<const double> p, const FdOptions& fd = {}) const;
  MetricJet finite_difference_jet(std::span<const double> p, const FdOptions& fd = {}) const;

  /// Same metric, derivatives forced through finite differences.
  ChartMetric without_exact_derivatives() const { return ChartMetric(dim_, eval_); }

 private:
  int dim_;
  Evaluator eval_;
  JetEvaluator jet_;
};

/// Builds a chart from a generic callable p -> row-major components,
/// `f(const std::array<T, kMaxDim>&) -> std::array<T, kMaxDim * kMaxDim>`,
/// instantiated on double for values and on Jet for exact derivatives.
template <class F>
ChartMetric make_chart(int dim, F f, std::function<void(std::span<const double>)> guard = nullptr) {
  auto eval = [dim, f, guard](std::span<const double> p) {
    if (guard) guard(p);
    std::array<double, kMaxDim> x{};
    for (int i = 0; i < dim; ++i) x[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    const auto c = f(x);
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = c[static_cast<std::size_t>(i * dim + j)];
    return m;
  };
  auto jet = [dim, f, guard](std::span<const double> p) {
    if (guard) guard(p);
    std::array<Jet, kMaxDim> x{};
    for (int i = 0; i < dim; ++i) x[static_cast<std::size_t>(i)] = Jet::variable(p[static_cast<std::size_t>(i)], i);
    const auto c = f(x);
    MetricJet out;
    out.dim = dim;
    out.g.resize(dim, dim);
    for (int k = 0; k < dim; ++k) {
      out.dg[static_cast<std::size_t>(k)].resize(dim, dim);
      for (int l = 0; l < dim; ++l) out.ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].resize(dim, dim);
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const Jet& e = c[static_cast<std::size_t>(i * dim + j)];
        out.g(i, j) = e.v;
        for (int k = 0; k < dim; ++k) {
          out.dg[static_cast<std::size_t>(k)](i, j) = e.d[static_cast<std::size_t>(k)];
          for (int l = 0; l < dim; ++l)
            out.ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)](i, j) =
                e.h[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        }
      }
    return out;
  };
  return ChartMetric(dim, eval, jet);
}

/// A scalar function of (x, y) available on double, Jet and Series.
class ScalarField {
 public:
  using DoubleFn = std::function<double(double, std::span<const double>)>;
  using JetFn = std::function<Jet(const Jet&, std::span<const Jet>)>;
  using SeriesFn = std::function<Series(const Series&, std::span<const Series>)>;

  ScalarField() = default;
  ScalarField(DoubleFn d, JetFn j, SeriesFn s) : d_(std::move(d)), j_(std::move(j)), s_(std::move(s)) {}

  /// From a generic callable `f(x, y)` where y is a span of the same scalar type.
  template <class F>
  static ScalarField from(F f) {
    return ScalarField([f](double x, std::span<const double> y) { return static_cast<double>(f(x, y)); },
                       [f](const Jet& x, std::span<const Jet> y) { return Jet(f(x, y)); },
                       [f](const Series& x, std::span<const Series> y) { return Series(f(x, y)); });
  }
  static ScalarField constant(double c) {
    return from([c](const auto&, const auto&) { return c; });
  }

  double operator()(double x, std::span<const double> y) const { return d_(x, y); }
  Jet operator()(const Jet& x, std::span<const Jet> y) const { return j_(x, y); }
  Series operator()(const Series& x, std::span<const Series> y) const { return s_(x, y); }

 private:
  DoubleFn d_;
  JetFn j_;
  SeriesFn s_;
};

struct CollarMetric {
  double eta = 1.0;
  double beta = 1.0;
  ScalarField alpha = ScalarField::constant(1.0);  // alpha(y); x is ignored
  ScalarField warp = ScalarField::constant(1.0);   // h_x = warp(x, y) h_B(y)
  BoundaryDescriptor boundary = BoundaryDescriptor::circle();
  double x_max = 1.0;
  int series_order = 8;
  /// h_0 degenerate (cusp-type fibers); positivity at x = 0 is not required.
  bool degenerate_h0 = false;

  int dim() const { return boundary.dim() + 1; }
  bool conformally_compact() const { return eta == 1.0 && beta == 1.0; }

  /// Exact h_x(y) in boundary coordinates.
  Mat h(double x, std::span<const double> y) const;
  /// Taylor coefficients h_k(y), k = 0..series_order.
  std::vector<Mat> h_series(std::span<const double> y) const;
  /// True when alpha is 1 at every boundary quadrature node.
  bool alpha_is_one() const;

  /// Throws std::invalid_argument when the standing assumptions fail:
  /// eta >= 1, 0 <= beta <= eta, h_0 positive definite (unless degenerate).
  void validate() const;
};

/// Chart in coordinates (x, y_1, ..., y_{m-1}) on (0, x_end]; rejects x <= 0.
ChartMetric collar_to_chart(const CollarMetric& cm);

/// The metric h_x at fixed x as a chart on ∂M.
ChartMetric boundary_chart(const CollarMetric& cm, double x);

/// Largest relative mismatch between the exact h_x and its Taylor series:
/// values near x = 0 and order-4 finite-difference first/second x-derivatives
/// at x = probe.
double series_consistency(const CollarMetric& cm, double probe = 1e-3);

enum class Evenness { Even, NotEven, Undetermined };

struct EvennessResult {
  Evenness status = Evenness::Undetermined;
  int offending_order = -1;  // first odd k < 2 ell with nonzero h_k
  double offending_magnitude = 0.0;
};

/// Checks that h_x contains only even powers of x below x^{2 ell}.
/// Conformally compact input only.
EvennessResult evenness_check(const CollarMetric& cm, int ell, double tol = 1e-12);

struct SpecialBdfResult {
  bool special = false;
  double max_deviation = 0.0;
};

/// Whether |dx|_{x^2 g} is independent of x on the collar. Rejects metrics
/// that are not conformally compact.
SpecialBdfResult special_bdf_check(const CollarMetric& cm, double tol = 1e-10);
/// Same diagnostic for a chart whose first coordinate is the bdf; y-samples
/// come from the descriptor's quadrature nodes.
SpecialBdfResult special_bdf_check(const ChartMetric& g, const BoundaryDescriptor& level, double x_max,
                                   double tol = 1e-10);

}  // namespace rgb
