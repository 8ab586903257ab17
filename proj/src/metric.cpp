#include "rgb/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rgb {

ChartMetric::ChartMetric(int dim, Evaluator eval, JetEvaluator jet)
    : dim_(dim), eval_(std::move(eval)), jet_(std::move(jet)) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("chart dimension must be 1..4");
  if (!eval_) throw std::invalid_argument("chart needs an evaluator");
}

MetricJet ChartMetric::jet(std::span<const double> p, const FdOptions& fd) const {
  if (jet_) return jet_(p);
  return finite_difference_jet(p, fd);
}

MetricJet ChartMetric::finite_difference_jet(std::span<const double> p, const FdOptions& fd) const {
  const int m = dim_;
  std::array<double, kMaxDim> base{};
  for (int i = 0; i < m; ++i) base[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
  std::array<double, kMaxDim> step{};
  for (int i = 0; i < m; ++i)
    step[static_cast<std::size_t>(i)] =
        (i == 0) ? fd.boundary_relative_step * std::max(std::abs(base[0]), 1e-12) : fd.interior_step;

  auto at = [&](int k, int a, int l, int b) {
    std::array<double, kMaxDim> q = base;
    if (k >= 0) q[static_cast<std::size_t>(k)] += a * step[static_cast<std::size_t>(k)];
    if (l >= 0) q[static_cast<std::size_t>(l)] += b * step[static_cast<std::size_t>(l)];
    return eval_(std::span<const double>(q.data(), static_cast<std::size_t>(m)));
  };

  MetricJet out;
  out.dim = m;
  out.g = at(-1, 0, -1, 0);
  static constexpr int offs[4] = {-2, -1, 1, 2};
  static constexpr double d1[4] = {1.0, -8.0, 8.0, -1.0};  // / 12h
  for (int k = 0; k < m; ++k) {
    const double h = step[static_cast<std::size_t>(k)];
    Mat first = Mat::Zero(m, m);
    Mat second = -30.0 * out.g;
    for (int s = 0; s < 4; ++s) {
      const Mat v = at(k, offs[s], -1, 0);
      first += d1[s] * v;
      second += ((std::abs(offs[s]) == 1) ? 16.0 : -1.0) * v;
    }
    out.dg[static_cast<std::size_t>(k)] = first / (12.0 * h);
    out.ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = second / (12.0 * h * h);
  }
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      Mat mixed = Mat::Zero(m, m);
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) mixed += d1[s] * d1[t] * at(k, offs[s], l, offs[t]);
      mixed /= 144.0 * step[static_cast<std::size_t>(k)] * step[static_cast<std::size_t>(l)];
      out.ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = mixed;
      out.ddg[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = mixed;
    }
  return out;
}

Mat CollarMetric::h(double x, std::span<const double> y) const {
  const int d = boundary.dim();
  std::array<double, kMaxDim * kMaxDim> base{};
  boundary.base_metric(y, std::span<double>(base.data(), static_cast<std::size_t>(d * d)));
  const double w = warp(x, y);
  Mat out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = w * base[static_cast<std::size_t>(i * d + j)];
  return out;
}

std::vector<Mat> CollarMetric::h_series(std::span<const double> y) const {
  const int d = boundary.dim();
  std::array<double, kMaxDim * kMaxDim> base{};
  boundary.base_metric(y, std::span<double>(base.data(), static_cast<std::size_t>(d * d)));
  std::vector<Series> ys(y.begin(), y.end());
  const Series w = warp(Series::variable(series_order), std::span<const Series>(ys));
  std::vector<Mat> terms;
  for (int k = 0; k <= series_order; ++k) {
    Mat t(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) t(i, j) = w[static_cast<std::size_t>(k)] * base[static_cast<std::size_t>(i * d + j)];
    terms.push_back(t);
  }
  return terms;
}

bool CollarMetric::alpha_is_one() const {
  for (std::size_t i = 0; i < boundary.size(); ++i)
    if (std::abs(alpha(0.0, boundary.node(i)) - 1.0) > 1e-14) return false;
  return true;
}

void CollarMetric::validate() const {
  if (!(eta >= 1.0)) throw std::invalid_argument("collar metric needs eta >= 1");
  if (!(beta >= 0.0)) throw std::invalid_argument("collar metric needs beta >= 0");
  if (!(eta >= beta)) throw std::invalid_argument("collar metric needs eta >= beta");
  if (!(x_max > 0.0)) throw std::invalid_argument("collar width must be positive");
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const auto y = boundary.node(i);
    if (!(alpha(0.0, y) > 0.0)) throw std::invalid_argument("alpha must be positive on the boundary");
    if (degenerate_h0) continue;
    const Mat h0 = h_series(y).front();
    Eigen::SelfAdjointEigenSolver<Mat> es(h0);
    if (!(es.eigenvalues().minCoeff() > 0.0)) throw std::invalid_argument("h_0 is not positive definite");
  }
}

ChartMetric collar_to_chart(const CollarMetric& cm) {
  const int m = cm.dim();
  const int d = m - 1;
  auto components = [cm, m, d](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    using std::pow;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    const T& x = p[0];
    std::span<const T> y(p.data() + 1, static_cast<std::size_t>(d));
    const T a = cm.alpha(x, y);
    c[0] = T(1.0) / (a * a * pow(x, 2.0 * cm.eta));
    std::array<T, kMaxDim * kMaxDim> base{};
    cm.boundary.base_metric(y, std::span<T>(base.data(), static_cast<std::size_t>(d * d)));
    const T scale = cm.warp(x, y) / pow(x, 2.0 * cm.beta);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        c[static_cast<std::size_t>((i + 1) * m + (j + 1))] = scale * base[static_cast<std::size_t>(i * d + j)];
    return c;
  };
  return make_chart(m, components, [](std::span<const double> p) {
    if (!(p[0] > 0.0)) {
      std::ostringstream os;
      os << "collar chart evaluated at x = " << p[0] << " <= 0";
      throw std::domain_error(os.str());
    }
  });
}

ChartMetric boundary_chart(const CollarMetric& cm, double x) {
  const int d = cm.boundary.dim();
  auto components = [cm, d, x](const auto& y) {
    using T = std::decay_t<decltype(y[0])>;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    std::span<const T> ys(y.data(), static_cast<std::size_t>(d));
    std::array<T, kMaxDim * kMaxDim> base{};
    cm.boundary.base_metric(ys, std::span<T>(base.data(), static_cast<std::size_t>(d * d)));
    const T w = cm.warp(T(x), ys);
    for (int i = 0; i < d * d; ++i) c[static_cast<std::size_t>(i)] = w * base[static_cast<std::size_t>(i)];
    return c;
  };
  return make_chart(d, components);
}

double series_consistency(const CollarMetric& cm, double probe) {
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
  for (std::size_t n = 0; n < cm.boundary.size(); ++n) {
    const auto y = cm.boundary.node(n);
    std::vector<Series> ys(y.begin(), y.end());
    const Series w = cm.warp(Series::variable(cm.series_order), std::span<const Series>(ys));
    const double x0 = 1e-4;
    worst = std::max(worst, rel(cm.warp(x0, y), w.evaluate(x0)));
    // Derivatives of the truncated series at the probe point.
    double ds = 0.0, dds = 0.0;
    for (int k = 1; k <= cm.series_order; ++k) {
      ds += k * w[static_cast<std::size_t>(k)] * std::pow(probe, k - 1);
      if (k >= 2) dds += k * (k - 1) * w[static_cast<std::size_t>(k)] * std::pow(probe, k - 2);
    }
    const double h = 0.1 * probe;
    auto f = [&](double x) { return cm.warp(x, y); };
    const double d1 = (-f(probe + 2 * h) + 8 * f(probe + h) - 8 * f(probe - h) + f(probe - 2 * h)) / (12 * h);
    const double d2 =
        (-f(probe + 2 * h) + 16 * f(probe + h) - 30 * f(probe) + 16 * f(probe - h) - f(probe - 2 * h)) / (12 * h * h);
    // Compare against the scale of the coefficients, since h_1 or h_2 may vanish.
    const double scale1 = std::max({std::abs(ds), std::abs(w[1]), std::abs(w[0])});
    const double scale2 = std::max({std::abs(dds), 2 * std::abs(w[2]), std::abs(w[0])});
    worst = std::max(worst, std::abs(d1 - ds) / scale1);
    worst = std::max(worst, std::abs(d2 - dds) / scale2);
  }
  return worst;
}

EvennessResult evenness_check(const CollarMetric& cm, int ell, double tol) {
  if (!cm.conformally_compact())
    throw std::invalid_argument("evenness is defined here only for conformally compact metrics (eta = beta = 1)");
  if (ell < 1) throw std::invalid_argument("evenness order must be positive");
  EvennessResult r;
  if (cm.series_order < 2 * ell - 1) return r;
  for (std::size_t n = 0; n < cm.boundary.size(); ++n) {
    const auto terms = cm.h_series(cm.boundary.node(n));
    for (int k = 1; k < 2 * ell; k += 2) {
      const double mag = terms[static_cast<std::size_t>(k)].cwiseAbs().maxCoeff();
      if (mag > tol && (r.offending_order < 0 || k < r.offending_order ||
                        (k == r.offending_order && mag > r.offending_magnitude))) {
        r.offending_order = k;
        r.offending_magnitude = mag;
      }
    }
  }
  r.status = (r.offending_order < 0) ? Evenness::Even : Evenness::NotEven;
  return r;
}

SpecialBdfResult special_bdf_check(const ChartMetric& g, const BoundaryDescriptor& level, double x_max, double tol) {
  SpecialBdfResult r;
  const int m = g.dim();
  std::array<double, kMaxDim> p{};
  for (std::size_t n = 0; n < level.size(); ++n) {
    const auto y = level.node(n);
    for (int i = 1; i < m; ++i) p[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i - 1)];
    double ref = 0.0;
    for (int k = 0; k <= 12; ++k) {
      const double x = x_max * std::pow(0.5, 12 - k);
      p[0] = x;
      const Mat gm = g(std::span<const double>(p.data(), static_cast<std::size_t>(m)));
      const double alpha = std::sqrt(gm.inverse()(0, 0)) / x;
      if (k == 0)
        ref = alpha;
      else
        r.max_deviation = std::max(r.max_deviation, std::abs(alpha - ref));
    }
  }
  r.special = r.max_deviation <= tol;
  return r;
}

SpecialBdfResult special_bdf_check(const CollarMetric& cm, double tol) {
  if (!cm.conformally_compact())
    throw std::invalid_argument("special bdf is defined only for conformally compact metrics (eta = beta = 1)");
  return special_bdf_check(collar_to_chart(cm), cm.boundary, cm.x_max, tol);
}

}  // namespace rgb
