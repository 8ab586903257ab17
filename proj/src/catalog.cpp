#include "rgb/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rgb {

namespace {

constexpr double kPi = std::numbers::pi;

CatalogEntry collar_entry(std::string name, double eta, double beta, ScalarField warp, BoundaryDescriptor boundary,
                          double x_collar, double x_end, int copies, int chi, std::string topology,
                          bool degenerate = false) {
  CollarMetric cm;
  cm.eta = eta;
  cm.beta = beta;
  cm.warp = std::move(warp);
  cm.boundary = std::move(boundary);
  cm.x_max = x_collar;
  cm.degenerate_h0 = degenerate;
  cm.validate();

  CatalogEntry e(std::move(name), Domain{collar_to_chart(cm), cm.boundary, x_collar, x_end, copies});
  e.dim = cm.dim();
  e.collar = cm;
  e.chi = chi;
  e.topology = std::move(topology);
  if (e.dim == 4) {
    e.tol.gauss_bonnet = 1e-3;
    e.tol.even = 1e-3;
    e.tol.pairwise = 1e-3;
  }
  return e;
}

void default_sets(CatalogEntry& e, int truncation, bool volume_log) {
  const CollarMetric& cm = *e.collar;
  const int m = e.dim;
  const int sv = volume_exponent(cm.eta, cm.beta, m);
  const int sb = boundary_exponent(cm.eta, cm.beta, m, cm.beta != 0.0);
  e.volume_set = IndexSet::integers(sv, truncation, volume_log ? 0 : -1);
  e.pfaffian_set = IndexSet::integers(sb, truncation);
  e.boundary_set = IndexSet::integers(sb, truncation);
}

ChartMetric round_sphere_chart(int m) {
  return make_chart(m, [m](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    using std::cos;
    using std::sin;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    const T s2 = sin(p[0]) * sin(p[0]);
    c[0] = 1.0;
    if (m == 2) {
      c[3] = s2;
    } else {
      c[5] = s2;
      c[10] = s2 * sin(p[1]) * sin(p[1]);
      c[15] = s2 * cos(p[1]) * cos(p[1]);
    }
    return c;
  });
}

CatalogEntry round_sphere_entry(int m) {
  CatalogEntry e(m == 2 ? "round-sphere-2" : "round-sphere-4",
                 Domain{round_sphere_chart(m),
                        m == 2 ? BoundaryDescriptor::circle() : BoundaryDescriptor::sphere3(6, 4), kPi, kPi, 1});
  e.dim = m;
  e.closed = true;
  e.chi = 2;
  e.topology = m == 2 ? "S^2" : "S^4";
  e.tol.closed = m == 2 ? 1e-9 : 1e-6;
  e.renormalized_pfaffian = ExpectedValue{2.0, "Euler characteristic of the sphere"};
  e.notes = "closed manifold; the boundary term is absent";
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  const auto sq = [](const auto& v) { return v * v; };

  {
    auto e = collar_entry("hyperbolic-disc", 1, 1,
                          ScalarField::from([sq](const auto& x, const auto&) { return sq(1.0 - x * x / 4.0); }),
                          BoundaryDescriptor::circle(), 1.0, 2.0, 1, 1, "disc");
    default_sets(e, 6, false);
    e.renormalized_volume = ExpectedValue{-2 * kPi, "area 2 pi (1/eps - 1 + eps/4) of {x >= eps}"};
    e.renormalized_pfaffian = ExpectedValue{1.0, "chi minus the vanishing boundary finite part"};
    e.boundary_finite_part = ExpectedValue{0.0, "geodesic curvature integral cosh r = 1/eps + eps/4"};
    e.notes = "Poincare disc, x = 2 exp(-r)";
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("hyperbolic-ball-4", 1, 1,
                          ScalarField::from([sq](const auto& x, const auto&) { return sq(1.0 - x * x / 4.0); }),
                          BoundaryDescriptor::sphere3(6, 4), 1.0, 2.0, 1, 1, "4-ball");
    default_sets(e, 6, false);
    e.grid = GridSpec{1e-3, 0.3, 24};
    e.renormalized_volume = ExpectedValue{4 * kPi * kPi / 3, "4 pi^2 / 3 for even hyperbolic 4-manifolds with chi = 1"};
    e.renormalized_pfaffian = ExpectedValue{1.0, "Euler characteristic of the ball"};
    e.boundary_finite_part = ExpectedValue{0.0, "even expansion of the boundary term"};
    e.notes = "hyperbolic 4-space, x = 2 exp(-r)";
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("hyperbolic-funnel", 1, 1,
                          ScalarField::from([sq](const auto& x, const auto&) { return sq(1.0 + x * x / 4.0); }),
                          BoundaryDescriptor::circle(), 2.0, 2.0, 2, 0, "annulus");
    default_sets(e, 6, false);
    e.renormalized_volume = ExpectedValue{0.0, "area 4 pi (1/eps - eps/4)"};
    e.renormalized_pfaffian = ExpectedValue{0.0, "Euler characteristic of the annulus"};
    e.boundary_finite_part = ExpectedValue{0.0, "boundary term 2 sinh s = 2 (1/eps - eps/4)"};
    e.notes = "hyperbolic cylinder ds^2 + cosh^2 s dtheta^2 with two funnel ends";
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("b-cylinder", 1, 0, ScalarField::constant(1.0), BoundaryDescriptor::circle(), 1.0, 1.0, 2, 0,
                          "annulus");
    default_sets(e, 6, true);
    e.renormalized_volume = ExpectedValue{0.0, "area -4 pi log eps"};
    e.renormalized_pfaffian = ExpectedValue{0.0, "flat"};
    e.boundary_finite_part = ExpectedValue{0.0, "geodesic boundary"};
    e.notes = "flat cylinder dx^2/x^2 + dtheta^2 with two ends";
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("b-warped-cylinder", 1, 0,
                          ScalarField::from([sq](const auto& x, const auto&) {
                            return sq(1.0 + 2.0 * x * x / sq(1.0 + x * x));
                          }),
                          BoundaryDescriptor::circle(), 1.0, 1.0, 2, 0, "annulus");
    default_sets(e, 6, true);
    e.renormalized_volume = ExpectedValue{2 * kPi, "area 4 pi log(1/eps) + 2 pi (1 - eps^2)/(1 + eps^2)"};
    e.renormalized_pfaffian = ExpectedValue{0.0, "Euler characteristic of the annulus"};
    e.boundary_finite_part = ExpectedValue{0.0, "boundary term -2 sech^2 s tanh s = O(eps^2)"};
    e.notes = "ds^2 + (1 + sech^2 s / 2)^2 dtheta^2, x = exp(-s)";
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("cusp", 1, 0,
                          ScalarField::from([sq](const auto& x, const auto&) { return x * x / sq(1.0 + x * x / 4.0); }),
                          BoundaryDescriptor::circle(), 2.0, 2.0, 2, 0, "annulus", true);
    default_sets(e, 6, false);
    e.grid = GridSpec{1e-3, 0.1, 24};
    e.renormalized_volume = ExpectedValue{2 * kPi * kPi, "finite area 4 pi gd(log(2/eps)) -> 2 pi^2"};
    e.renormalized_pfaffian = ExpectedValue{0.0, "Euler characteristic of the annulus"};
    e.boundary_finite_part = ExpectedValue{0.0, "boundary term O(eps)"};
    e.notes = "ds^2 + sech^2 s dtheta^2 with two cusp ends, h_x = x^2 dtheta^2 to leading order";
    e.tol.cross_validation = 0.0;
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("scattering-plane", 2, 1,
                          ScalarField::from([sq](const auto& x, const auto&) { return sq(1.0 - x / 2.0); }),
                          BoundaryDescriptor::circle(), 1.0, 2.0, 1, 1, "plane");
    default_sets(e, 6, false);
    e.renormalized_volume = ExpectedValue{kPi / 4, "area pi (1/eps - 1/2)^2"};
    e.renormalized_pfaffian = ExpectedValue{0.0, "flat"};
    e.boundary_finite_part = ExpectedValue{1.0, "total geodesic curvature of a round circle / 2 pi"};
    e.notes = "Euclidean plane, r = 1/x - 1/2";
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("scattering-r4", 2, 1,
                          ScalarField::from([sq](const auto& x, const auto&) { return sq(1.0 - x / 2.0); }),
                          BoundaryDescriptor::sphere3(6, 4), 1.0, 2.0, 1, 1, "R^4");
    default_sets(e, 6, false);
    e.volume_set = IndexSet::integers(-4, 3);
    e.grid = GridSpec{1e-3, 0.3, 24};
    e.renormalized_volume = ExpectedValue{kPi * kPi / 32, "volume (pi^2/2) (1/eps - 1/2)^4"};
    e.renormalized_pfaffian = ExpectedValue{0.0, "flat"};
    e.boundary_finite_part = ExpectedValue{1.0, "round S^3 boundary term, Euler characteristic of the ball"};
    e.notes = "Euclidean 4-space, r = 1/x - 1/2";
    out.push_back(std::move(e));
  }
  {
    auto e = collar_entry("scattering-t3", 2, 1,
                          ScalarField::from([](const auto& x, const auto&) { return 1.0 - 2.0 * x + 2.0 * x * x; }),
                          BoundaryDescriptor::torus(3, 4), 1.0, 1.0, 2, 0, "R x T^3");
    default_sets(e, 6, true);
    e.grid = GridSpec{1e-3, 0.1, 24};
    e.renormalized_pfaffian = ExpectedValue{4 * kPi, "integral of the Pfaffian of dr^2 + (1 + r^2) g_T3"};
    e.boundary_finite_part = ExpectedValue{-4 * kPi, "two ends, each -(2 pi)^3 / (4 pi^2)"};
    e.notes = "dr^2 + (1 + r^2) g_T3 over the flat torus of period 2 pi, r = 1/x - 1, two ends";
    out.push_back(std::move(e));
  }
  out.push_back(round_sphere_entry(2));
  out.push_back(round_sphere_entry(4));
  {
    auto e = collar_entry("perturbed-ball-4", 1, 1,
                          ScalarField::from([sq](const auto& x, const auto&) {
                            const auto u = 2.0 - x;
                            const auto u3 = u * u * u;
                            return sq(1.0 - x * x / 4.0) + 0.02 * x * x * x * u3 * u3;
                          }),
                          BoundaryDescriptor::sphere3(6, 4), 1.0, 2.0, 1, 1, "4-ball");
    e.volume_set = IndexSet::integers(-3, 5, 0);
    e.pfaffian_set = IndexSet::integers(-3, 5, 0);
    e.boundary_set = IndexSet::integers(-3, 5, 0);
    e.grid = GridSpec{1e-3, 0.3, 24};
    e.exploratory = true;
    e.notes = "hyperbolic 4-ball with an odd x^3 perturbation of the boundary metric; not even";
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

int volume_exponent(double eta, double beta, int m) {
  return static_cast<int>(std::floor(1.0 - eta - beta * (m - 1) + 1e-12));
}

int boundary_exponent(double eta, double beta, int m, bool alpha_beta_nonzero) {
  double r_min = std::min(2 * beta, 2 * eta);
  if (alpha_beta_nonzero) r_min = std::min(r_min, 2 * eta - 2);
  const double s_min = beta > 0 ? eta - 1 : eta;
  double lowest = 0.0;
  for (int q = 0; 2 * q <= m - 1; ++q)
    lowest = std::min(lowest, q * r_min + (m - 1 - 2 * q) * s_min - beta * (m - 1));
  return static_cast<int>(std::floor(lowest + 1e-12));
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog()) out.push_back(e.name);
  return out;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  std::string msg = "unknown catalog entry '" + name + "'; available:";
  for (const auto& n : catalog_names()) msg += " " + n;
  throw std::out_of_range(msg);
}

CatalogEntry entry_from_inline(const InlineMetric& spec) {
  if (spec.name.empty()) throw std::invalid_argument("inline metric needs a name");
  if (spec.warp.empty()) throw std::invalid_argument("inline metric needs warp coefficients");
  if (spec.copies < 1) throw std::invalid_argument("copies must be positive");
  if (!(spec.x_collar > 0.0) || spec.x_end < spec.x_collar)
    throw std::invalid_argument("need 0 < x_collar <= x_end");
  if (spec.truncation < 1) throw std::invalid_argument("truncation must be positive");
  if (!(spec.grid.lo > 0.0) || spec.grid.hi <= spec.grid.lo || spec.grid.hi > spec.x_collar || spec.grid.n < 2)
    throw std::invalid_argument("grid must satisfy 0 < lo < hi <= x_collar with at least 2 points");

  BoundaryDescriptor boundary;
  if (spec.boundary == "S1" || spec.boundary == "T1")
    boundary = BoundaryDescriptor::circle();
  else if (spec.boundary == "S3")
    boundary = BoundaryDescriptor::sphere3(6, 4);
  else if (spec.boundary == "T2")
    boundary = BoundaryDescriptor::torus(2, 8);
  else if (spec.boundary == "T3")
    boundary = BoundaryDescriptor::torus(3, 4);
  else
    throw std::invalid_argument("unknown boundary '" + spec.boundary + "' (expected S1, S3, T1, T2 or T3)");

  const auto exponents_integral = [](double v) { return std::abs(v - std::round(v)) < 1e-12; };
  if (!exponents_integral(spec.eta) || !exponents_integral(spec.beta))
    throw std::invalid_argument("only integer eta and beta are supported for inline metrics");

  const std::vector<double> coeffs = spec.warp;
  const auto warp = ScalarField::from([coeffs](const auto& x, const auto&) {
    using T = std::decay_t<decltype(x)>;
    T acc = T(coeffs.back());
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * x + T(coeffs[k]);
    return acc;
  });
  for (int i = 0; i <= 200; ++i) {
    const double x = spec.x_end * i / 200.0;
    double w = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) w = w * x + coeffs[k];
    if (!(w > 0.0) && !(i == 200 && w == 0.0))
      throw std::invalid_argument("warp polynomial must be positive on [0, x_end)");
  }

  auto e = collar_entry(spec.name, spec.eta, spec.beta, warp, boundary, spec.x_collar, spec.x_end, spec.copies,
                        spec.chi, "user");
  default_sets(e, spec.truncation, spec.volume_log);
  e.grid = spec.grid;
  if (e.dim == 4) e.tol.gauss_bonnet = 1e-3;
  e.notes = "inline metric";
  return e;
}

}  // namespace rgb
