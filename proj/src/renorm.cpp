#include "rgb/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rgb/gb_integrands.hpp"

namespace rgb {
namespace {

constexpr double kExponentTol = 1e-12;

bool same(double a, double b) { return std::abs(a - b) <= kExponentTol; }

bool less_term(const IndexTerm& a, const IndexTerm& b) {
  if (!same(a.s, b.s)) return a.s < b.s;
  return a.p < b.p;
}

double basis(double eps, double s, int p) {
  double v = std::pow(eps, s);
  const double l = std::log(eps);
  for (int k = 0; k < p; ++k) v *= l;
  return v;
}

std::array<double, kMaxDim> chart_point(double x, std::span<const double> y) {
  std::array<double, kMaxDim> p{};
  p[0] = x;
  for (std::size_t i = 0; i < y.size(); ++i) p[i + 1] = y[i];
  return p;
}

double slice_with(const Domain& d, const BoundaryDescriptor& level, const BulkDensity& density, double x) {
  const int m = d.chart.dim();
  double total = 0.0;
  for (std::size_t n = 0; n < level.size(); ++n) {
    const auto p = chart_point(x, level.node(n));
    const std::span<const double> ps(p.data(), static_cast<std::size_t>(m));
    const double f = density(d.chart, ps);
    if (f == 0.0) continue;
    total += level.weight(n) * f * std::sqrt(d.chart(ps).determinant());
  }
  return d.copies * total;
}

struct PanelSum {
  double fine = 0.0;
  double coarse = 0.0;
  bool failed = false;
};

// Integral of F over [a, b] in t = log x (log_sub) or in x.
template <class F>
PanelSum panel(F f, double a, double b, int nodes, bool log_sub) {
  PanelSum r;
  try {
    const double lo = log_sub ? std::log(a) : a;
    const double hi = log_sub ? std::log(b) : b;
    auto run = [&](int n) {
      const Rule1D rule = gauss_legendre(n, lo, hi);
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = log_sub ? std::exp(rule.nodes[i]) : rule.nodes[i];
        s += rule.weights[i] * f(x) * (log_sub ? x : 1.0);
      }
      return s;
    };
    r.fine = run(nodes);
    r.coarse = run(std::max(1, nodes / 2));
    if (!std::isfinite(r.fine)) r.failed = true;
  } catch (const std::domain_error&) {
    r.failed = true;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::vector<IndexTerm> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(), less_term);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.p < 0) throw std::invalid_argument("index set: negative log power");
    if (!std::isfinite(t.s)) throw std::invalid_argument("index set: non-finite exponent");
    if (i > 0 && same(terms_[i - 1].s, t.s) && terms_[i - 1].p == t.p)
      throw std::invalid_argument("index set: repeated term");
  }
  for (const auto& t : terms_) {
    if (t.p >= 1 && !contains(t.s, t.p - 1)) {
      std::ostringstream os;
      os << "index set not closed: (" << t.s << "," << t.p << ") present without (" << t.s << "," << t.p - 1 << ")";
      throw std::invalid_argument(os.str());
    }
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& u : terms_)
      if (u.p == t.p) top = std::max(top, u.s);
    if (t.s + 1.0 <= top + kExponentTol && !contains(t.s + 1.0, t.p)) {
      std::ostringstream os;
      os << "index set not closed: (" << t.s << "," << t.p << ") present without (" << t.s + 1.0 << "," << t.p
         << ") below the truncation order " << top;
      throw std::invalid_argument(os.str());
    }
  }
}

IndexSet IndexSet::integers(int s_min, int s_max, int log_max) {
  if (s_max < s_min) throw std::invalid_argument("index set: empty exponent range");
  std::vector<IndexTerm> t;
  for (int s = s_min; s <= s_max; ++s) t.push_back({static_cast<double>(s), 0});
  if (log_max >= 0) {
    if (s_min > 0 || log_max > s_max) throw std::invalid_argument("index set: log terms outside the exponent range");
    for (int s = 0; s <= log_max; ++s) t.push_back({static_cast<double>(s), 1});
  }
  return IndexSet(std::move(t));
}

double IndexSet::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("empty index set");
  return terms_.front().s;
}

double IndexSet::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("empty index set");
  double m = terms_.front().s;
  for (const auto& t : terms_) m = std::max(m, t.s);
  return m;
}

bool IndexSet::contains(double s, int p) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const IndexTerm& t) { return t.p == p && same(t.s, s); });
}

bool IndexSet::has_log_at_zero() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const IndexTerm& t) { return t.p >= 1 && same(t.s, 0.0); });
}

IndexSet IndexSet::derivative() const {
  std::vector<IndexTerm> out;
  auto add = [&out](double s, int p) {
    for (const auto& t : out)
      if (t.p == p && same(t.s, s)) return;
    out.push_back({s, p});
  };
  for (const auto& t : terms_) {
    if (!same(t.s, 0.0)) add(t.s - 1.0, t.p);
    if (t.p >= 1) add(t.s - 1.0, t.p - 1);
  }
  // Close up: unit steps within each log level, and lower log powers.
  bool changed = true;
  while (changed) {
    changed = false;
    const auto snapshot = out;
    for (const auto& t : snapshot) {
      double top = t.s;
      for (const auto& u : snapshot)
        if (u.p == t.p) top = std::max(top, u.s);
      if (t.s + 1.0 <= top + kExponentTol) {
        const std::size_t before = out.size();
        add(t.s + 1.0, t.p);
        changed |= out.size() != before;
      }
      if (t.p >= 1) {
        const std::size_t before = out.size();
        add(t.s, t.p - 1);
        changed |= out.size() != before;
      }
    }
  }
  return IndexSet(std::move(out));
}

// ---------------------------------------------------------------- series

double PhgSeries::evaluate(double eps) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.coefficient * basis(eps, t.s, t.p);
  return v;
}

double PhgSeries::coefficient(double s, int p) const {
  for (const auto& t : terms)
    if (t.p == p && same(t.s, s)) return t.coefficient;
  return 0.0;
}

const char* scheme_name(Scheme s) { return s == Scheme::Zeta ? "zeta" : "epsilon"; }

// ---------------------------------------------------------------- densities

BulkDensity volume_density() {
  return [](const ChartMetric&, std::span<const double>) { return 1.0; };
}

BulkDensity zero_density() {
  return [](const ChartMetric&, std::span<const double>) { return 0.0; };
}

BulkDensity pfaffian_bulk_density(const FdOptions& fd) {
  return [fd](const ChartMetric& g, std::span<const double> p) { return pfaffian_density(riemann(g, p, fd)); };
}

BoundaryDensity unit_boundary_density() {
  return [](const LevelSetSample&) { return 1.0; };
}

BoundaryDensity transgression_boundary_density() {
  return [](const LevelSetSample& s) { return transgression_density(s.R_tangent, s.S); };
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log grid needs 0 < lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// ---------------------------------------------------------------- sweeps

std::vector<Sample> sweep_boundary(const Domain& d, const BoundaryDensity& density, std::span<const double> grid,
                                   const SweepOptions& opts) {
  if (d.level.dim() != d.chart.dim() - 1) throw std::invalid_argument("boundary descriptor does not match the chart");
  const BoundaryDescriptor coarse = d.level.coarse();
  auto integrate = [&](const BoundaryDescriptor& level, double eps) {
    double s = 0.0;
    for (std::size_t n = 0; n < level.size(); ++n) {
      const LevelSetSample ls = sample_level_set(d.chart, eps, level.node(n), opts.side, opts.fd);
      s += level.weight(n) * density(ls) * ls.dvol_boundary;
    }
    return d.copies * s;
  };
  std::vector<Sample> out;
  for (double eps : grid) {
    if (!(eps > 0.0)) throw std::invalid_argument("sweep grid must be positive");
    Sample smp;
    smp.eps = eps;
    try {
      smp.value = integrate(d.level, eps);
      smp.error_estimate = std::abs(smp.value - integrate(coarse, eps));
      smp.flagged = !std::isfinite(smp.value);
    } catch (const std::domain_error&) {
      smp.value = std::numeric_limits<double>::quiet_NaN();
      smp.flagged = true;
    }
    out.push_back(smp);
  }
  return out;
}

double slice_integral(const Domain& d, const BulkDensity& density, double x0, const FdOptions&) {
  return slice_with(d, d.level, density, x0);
}

double BulkSweep::volume_at(double eps) const {
  for (const auto* list : {&volume, &extra})
    for (const auto& s : *list)
      if (std::abs(s.eps - eps) <= 1e-14 * eps) return s.value;
  std::ostringstream os;
  os << "volume not sampled at eps = " << eps;
  throw std::invalid_argument(os.str());
}

BulkSweep sweep_bulk(const Domain& d, const BulkDensity& density, std::span<const double> grid,
                     const SweepOptions& opts) {
  if (d.level.dim() != d.chart.dim() - 1) throw std::invalid_argument("boundary descriptor does not match the chart");
  if (!(d.x_end >= d.x_collar)) throw std::invalid_argument("domain needs x_end >= x_collar");
  std::vector<double> pts(grid.begin(), grid.end());
  pts.insert(pts.end(), opts.extra_points.begin(), opts.extra_points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return std::abs(a - b) <= 1e-14 * b; }),
            pts.end());
  if (pts.empty()) throw std::invalid_argument("empty sweep grid");
  if (!(pts.front() > 0.0) || pts.back() > d.x_collar)
    throw std::invalid_argument("sweep points must lie in (0, x_collar]");

  auto F = [&](double x) { return slice_with(d, d.level, density, x); };

  // Segment i covers [pts[i], pts[i+1]] (the last one ends at x_collar).
  const std::size_t N = pts.size();
  std::vector<PanelSum> seg(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double a = pts[i];
    const double b = (i + 1 < N) ? pts[i + 1] : d.x_collar;
    if (!(b > a)) continue;
    const int k = std::max(1, static_cast<int>(std::ceil(std::log(b / a) / opts.max_panel_log_width)));
    const double la = std::log(a), lb = std::log(b);
    for (int j = 0; j < k; ++j) {
      const PanelSum ps =
          panel(F, std::exp(la + (lb - la) * j / k), std::exp(la + (lb - la) * (j + 1) / k), opts.collar_nodes, true);
      seg[i].fine += ps.fine;
      seg[i].coarse += ps.coarse;
      seg[i].failed |= ps.failed;
    }
  }
  PanelSum interior;
  if (d.x_end > d.x_collar) {
    const int k = std::max(1, opts.interior_panels);
    for (int j = 0; j < k; ++j) {
      const double a = d.x_collar + (d.x_end - d.x_collar) * j / k;
      const double b = d.x_collar + (d.x_end - d.x_collar) * (j + 1) / k;
      const PanelSum ps = panel(F, a, b, opts.interior_nodes, false);
      interior.fine += ps.fine;
      interior.coarse += ps.coarse;
      interior.failed |= ps.failed;
    }
  }

  std::vector<Sample> cumulative(N);
  double v = interior.fine, err = std::abs(interior.fine - interior.coarse);
  bool failed = interior.failed;
  for (std::size_t i = N; i-- > 0;) {
    v += seg[i].fine;
    err += std::abs(seg[i].fine - seg[i].coarse);
    failed |= seg[i].failed;
    cumulative[i] = {pts[i], failed ? std::numeric_limits<double>::quiet_NaN() : v, err, failed};
  }
  auto lookup = [&](double eps) {
    for (const auto& s : cumulative)
      if (std::abs(s.eps - eps) <= 1e-14 * eps) return s;
    throw std::logic_error("sweep point lost");
  };

  BulkSweep out;
  for (double eps : grid) {
    out.volume.push_back(lookup(eps));
    Sample s{eps, 0.0, 0.0, false};
    try {
      s.value = F(eps);
      s.flagged = !std::isfinite(s.value);
    } catch (const std::domain_error&) {
      s.value = std::numeric_limits<double>::quiet_NaN();
      s.flagged = true;
    }
    out.slice.push_back(s);
  }
  for (double eps : opts.extra_points) out.extra.push_back(lookup(eps));
  return out;
}

double integrate_bulk(const Domain& d, const BulkDensity& density, double a, double b, int panels, int nodes,
                      const FdOptions&) {
  if (!(b > a)) throw std::invalid_argument("integrate_bulk needs a < b");
  auto F = [&](double x) { return slice_with(d, d.level, density, x); };
  double total = 0.0;
  for (int j = 0; j < panels; ++j) {
    const Rule1D r = gauss_legendre(nodes, a + (b - a) * j / panels, a + (b - a) * (j + 1) / panels);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) total += r.weights[i] * F(r.nodes[i]);
  }
  return total;
}

// ---------------------------------------------------------------- fitting

PhgSeries fit_phg(std::span<const Sample> samples, const IndexSet& set, const FitOptions& opts) {
  const std::size_t k = set.size();
  const std::size_t n = samples.size();
  if (k == 0) throw std::invalid_argument("fit_phg: empty index set");
  if (n < 2 * k) {
    std::ostringstream os;
    os << "fit_phg: underdetermined, " << n << " samples for " << k << " basis terms (need " << 2 * k << ")";
    throw std::invalid_argument(os.str());
  }
  for (const auto& s : samples)
    if (s.flagged || !std::isfinite(s.value) || !(s.eps > 0.0))
      throw std::invalid_argument("fit_phg: sample at eps = " + std::to_string(s.eps) + " is not usable");

  // Extended precision keeps the solve well below the sample rounding.
  using Real = long double;
  using MatL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const double smin = set.min_exponent();
  MatL A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  VecL b(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Real eps = samples[i].eps;
    const Real w = std::pow(eps, static_cast<Real>(-smin));
    b(static_cast<Eigen::Index>(i)) = w * static_cast<Real>(samples[i].value);
    for (std::size_t j = 0; j < k; ++j) {
      Real v = std::pow(eps, static_cast<Real>(set.terms()[j].s));
      for (int q = 0; q < set.terms()[j].p; ++q) v *= std::log(eps);
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w * v;
    }
  }
  VecL scale(static_cast<Eigen::Index>(k));
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    scale(j) = A.col(j).norm();
    if (scale(j) > 0) A.col(j) /= scale(j);
  }
  Eigen::JacobiSVD<MatL> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  PhgSeries out;
  out.condition = sv(sv.size() - 1) > 0 ? static_cast<double>(sv(0) / sv(sv.size() - 1))
                                        : std::numeric_limits<double>::infinity();
  out.ill_conditioned = !(out.condition <= opts.max_condition);
  const VecL x = svd.solve(b);
  for (std::size_t j = 0; j < k; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out.terms.push_back(
        {set.terms()[j].s, set.terms()[j].p, scale(jj) > 0 ? static_cast<double>(x(jj) / scale(jj)) : 0.0});
  }
  out.truncation = set.max_exponent();
  const double bmax = static_cast<double>(b.cwiseAbs().maxCoeff());
  const double rms = static_cast<double>((A * x - b).norm()) / std::sqrt(static_cast<double>(n));
  out.residual = rms / std::max(1.0, bmax);
  return out;
}

RenormResult finite_part_eps(const PhgSeries& series) {
  RenormResult r;
  r.scheme = Scheme::Epsilon;
  r.finite_part = series.coefficient(0.0, 0);
  r.condition = series.condition;
  r.residual = series.residual;
  r.ill_conditioned = series.ill_conditioned;
  for (const auto& t : series.terms) {
    if (t.s < -kExponentTol || (same(t.s, 0.0) && t.p >= 1)) r.divergent.push_back(t);
    if (same(t.s, 0.0) && t.p >= 1) r.log_at_zero = true;
  }
  if (r.log_at_zero) r.flags.emplace_back("log-at-zero");
  if (r.ill_conditioned) r.flags.emplace_back("ill-conditioned");
  return r;
}

double zeta_term(double s, int p, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("zeta split point must be positive");
  if (p < 0) throw std::invalid_argument("negative log power");
  const double L = std::log(delta);
  if (same(s, -1.0)) return std::pow(L, p + 1) / (p + 1);
  double sum = 0.0, falling = 1.0;  // p! / (p - k)!
  for (int k = 0; k <= p; ++k) {
    if (k > 0) falling *= (p - k + 1);
    sum += ((k % 2) ? -1.0 : 1.0) * falling * std::pow(L, p - k) / std::pow(s + 1.0, k + 1);
  }
  return std::pow(delta, s + 1.0) * sum;
}

RenormResult finite_part_zeta(const PhgSeries& collar, double interior, double delta) {
  RenormResult r;
  r.scheme = Scheme::Zeta;
  r.split_point = delta;
  r.condition = collar.condition;
  r.residual = collar.residual;
  r.ill_conditioned = collar.ill_conditioned;
  double fp = interior;
  for (const auto& t : collar.terms) {
    fp += t.coefficient * zeta_term(t.s, t.p, delta);
    if (t.s <= -1.0 + kExponentTol) r.divergent.push_back(t);
    if (same(t.s, -1.0)) r.pole_at_zero = true;
  }
  r.finite_part = fp;
  if (r.pole_at_zero) r.flags.emplace_back("pole-at-zero");
  if (r.ill_conditioned) r.flags.emplace_back("ill-conditioned");
  return r;
}

RenormResult renormalize_epsilon(const BulkSweep& sweep, const IndexSet& set, const FitOptions& fit) {
  return finite_part_eps(fit_phg(sweep.volume, set, fit));
}

RenormResult renormalize_zeta(const BulkSweep& sweep, const IndexSet& set, double delta, const FitOptions& fit) {
  const PhgSeries collar = fit_phg(sweep.slice, set.derivative(), fit);
  RenormResult r = finite_part_zeta(collar, sweep.volume_at(delta), delta);
  const RenormResult half = finite_part_zeta(collar, sweep.volume_at(0.5 * delta), 0.5 * delta);
  r.split_deviation = std::abs(r.finite_part - half.finite_part) / (1.0 + std::abs(r.finite_part));
  r.log_at_zero = set.has_log_at_zero();
  // A 1/x term in the density is only genuine when V carries log eps.
  r.pole_at_zero = r.log_at_zero;
  if (!r.pole_at_zero) r.flags.erase(std::remove(r.flags.begin(), r.flags.end(), "pole-at-zero"), r.flags.end());
  if (r.log_at_zero) r.flags.emplace_back("log-at-zero");
  return r;
}

double default_split_point(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return *std::max_element(grid.begin(), grid.end());
}

RenormResult renormalized_integral(const Domain& d, const BulkDensity& density, Scheme scheme, const IndexSet& set,
                                   std::span<const double> grid, SweepOptions opts) {
  const double delta = default_split_point(grid);
  if (scheme == Scheme::Zeta) {
    opts.extra_points.push_back(delta);
    opts.extra_points.push_back(0.5 * delta);
  }
  const BulkSweep sweep = sweep_bulk(d, density, grid, opts);
  return scheme == Scheme::Zeta ? renormalize_zeta(sweep, set, delta) : renormalize_epsilon(sweep, set);
}

RenormResult renormalized_boundary_integral(const Domain& d, const BoundaryDensity& density, const IndexSet& set,
                                            std::span<const double> grid, const SweepOptions& opts) {
  const auto samples = sweep_boundary(d, density, grid, opts);
  return finite_part_eps(fit_phg(samples, set));
}

std::string samples_to_csv(std::span<const Sample> samples, const std::string& error_column) {
  std::string out = "eps,value," + error_column + "\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.eps, s.value, s.error_estimate);
    out += buf;
  }
  return out;
}

}  // namespace rgb
