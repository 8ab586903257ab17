#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "geometries.hpp"
#include "rgb/gb_integrands.hpp"

using namespace rgb;

namespace {

const double pi = std::numbers::pi;

int levi_civita(std::array<int, 4> v) {
  int s = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (v[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(j)]) return 0;
      if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(j)]) s = -s;
    }
  return s;
}

// Chern-Gauss-Bonnet in four dimensions with epsilon tensors.
double pfaffian4_oracle(const DoubleForm& R) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const int e1 = levi_civita({i, j, k, l});
          if (e1 == 0) continue;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                  const int e2 = levi_civita({a, b, c, d});
                  if (e2 == 0) continue;
                  sum += e1 * e2 * R({i, j}, {a, b}) * R({k, l}, {c, d});
                }
        }
  return sum / (128.0 * pi * pi);
}

DoubleForm constant_curvature(int m, double K) { return (0.5 * K) * df_power(DoubleForm::metric(m), 2); }

DoubleForm random_curvature(int m, std::mt19937& rng) {
  // Sums of squares of random symmetric forms obey the curvature symmetries.
  std::normal_distribution<double> N;
  DoubleForm R(2, 2, m);
  for (int t = 0; t < 3; ++t) {
    std::vector<double> A(static_cast<std::size_t>(m * m));
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) A[static_cast<std::size_t>(i * m + j)] = A[static_cast<std::size_t>(j * m + i)] = N(rng);
    const DoubleForm h = DoubleForm::from_bilinear(m, A);
    R += (t == 1 ? -0.5 : 0.5) * df_product(h, h);
  }
  return R;
}

template <class F>
double integrate2(F f, double a0, double a1, double b0, double b1, int n = 48) {
  const Rule1D ra = gauss_legendre(n, a0, a1), rb = gauss_legendre(n, b0, b1);
  double s = 0.0;
  for (std::size_t i = 0; i < ra.nodes.size(); ++i)
    for (std::size_t j = 0; j < rb.nodes.size(); ++j) s += ra.weights[i] * rb.weights[j] * f(ra.nodes[i], rb.nodes[j]);
  return s;
}

double pff_times_volume(const ChartMetric& g, std::span<const double> p) {
  return pfaffian_density(riemann(g, p)) * std::sqrt(g(p).determinant());
}

}  // namespace

TEST_CASE("sphere volumes") {
  CHECK(sphere_volume(0) == doctest::Approx(2.0));
  CHECK(sphere_volume(1) == doctest::Approx(2 * pi));
  CHECK(sphere_volume(2) == doctest::Approx(4 * pi));
  CHECK(sphere_volume(3) == doctest::Approx(2 * pi * pi));
  CHECK(sphere_volume(4) == doctest::Approx(8 * pi * pi / 3));
}

TEST_CASE("pfaffian of constant curvature") {
  CHECK(pfaffian_density(DoubleForm(2, 2, 4)) == 0.0);
  CHECK(pfaffian_density(DoubleForm(2, 2, 2)) == 0.0);
  // Four-term enumeration in two dimensions: sum sgn sgn R = 4 K.
  CHECK(pfaffian_density(constant_curvature(2, -1.0)) == doctest::Approx(-1.0 / (2 * pi)));
  CHECK(pfaffian_density(constant_curvature(2, 0.3)) == doctest::Approx(0.3 / (2 * pi)));
  CHECK(pfaffian_density(constant_curvature(4, -1.0)) == doctest::Approx(3.0 / (4 * pi * pi)));
  CHECK(pfaffian_density(constant_curvature(4, 1.0)) * sphere_volume(4) == doctest::Approx(2.0));
  CHECK_THROWS_AS(pfaffian_density(constant_curvature(3, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(pfaffian_density(DoubleForm::metric(2)), std::invalid_argument);
}

TEST_CASE("pfaffian agrees with the epsilon-tensor formula and the power path") {
  std::mt19937 rng(17);
  for (int t = 0; t < 5; ++t) {
    const DoubleForm R = random_curvature(4, rng);
    const double a = pfaffian_density(R);
    CHECK(a == doctest::Approx(pfaffian4_oracle(R)).epsilon(1e-11));
    CHECK(a == doctest::Approx(pfaffian_density_via_power(R)).epsilon(1e-12));
    const DoubleForm R2 = random_curvature(2, rng);
    CHECK(pfaffian_density(R2) == doctest::Approx(pfaffian_density_via_power(R2)).epsilon(1e-12));
  }
}

TEST_CASE("sphere calibration of the pfaffian") {
  const ChartMetric s2 = testgeo::round_sphere2();
  const double I2 = integrate2(
      [&](double r, double t) {
        const std::array<double, 2> p{r, t};
        return pff_times_volume(s2, p);
      },
      0.0, pi, 0.0, 2 * pi, 24);
  CHECK(I2 == doctest::Approx(2.0).epsilon(1e-9));

  // On S^4 the integrand only depends on (r, chi); the two angles give 4 pi^2.
  const ChartMetric s4 = testgeo::round_sphere4();
  const double I4 = integrate2(
      [&](double r, double chi) {
        const std::array<double, 4> p{r, chi, 0.3, 1.1};
        return pff_times_volume(s4, p);
      },
      0.0, pi, 0.0, 0.5 * pi, 24);
  CHECK(4 * pi * pi * I4 == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("closed-surface Gauss-Bonnet on ellipsoids") {
  for (double c : {1.0, 1.5, 2.0, 3.0, 0.5}) {
    const ChartMetric g = testgeo::ellipsoid(1.0, c);
    const double I = integrate2(
        [&](double th, double ph) {
          const std::array<double, 2> p{th, ph};
          return pff_times_volume(g, p);
        },
        0.0, pi, 0.0, 2 * pi, 64);
    CHECK(I == doctest::Approx(2.0).epsilon(1e-5));
  }
}

TEST_CASE("transgression in two dimensions is the geodesic curvature density") {
  DoubleForm S(1, 1, 1);
  S.set({0}, {0}, 0.7);
  CHECK(transgression_density(DoubleForm(2, 2, 1), S) == doctest::Approx(0.7 / (2 * pi)));
  CHECK(transgression_density(DoubleForm(2, 2, 1), DoubleForm(1, 1, 1)) == 0.0);
}

TEST_CASE("classical Gauss-Bonnet on the flat disc and spherical caps") {
  const std::array<double, 1> y{0.0};
  // Flat unit disc: no bulk term.
  const LevelSetSample disc = sample_level_set(testgeo::flat_polar(), 1.0, y, Side::Below);
  CHECK(2 * pi * disc.dvol_boundary * transgression_density(disc.R_tangent, disc.S) == doctest::Approx(1.0).epsilon(1e-12));

  const ChartMetric s2 = testgeo::round_sphere2();
  for (double rho : {0.4, 1.2, 2.0}) {
    const Rule1D rr = gauss_legendre(40, 0.0, rho);
    double bulk = 0.0;
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
      const std::array<double, 2> p{rr.nodes[i], 0.0};
      bulk += 2 * pi * rr.weights[i] * pff_times_volume(s2, p);
    }
    const LevelSetSample cap = sample_level_set(s2, rho, y, Side::Below);
    const double boundary = 2 * pi * cap.dvol_boundary * transgression_density(cap.R_tangent, cap.S);
    CHECK(bulk + boundary == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("round S^3 of any radius in flat R^4 bounds with total 1") {
  for (double r : {0.5, 1.0, 3.0}) {
    const DoubleForm S = (1.0 / r) * DoubleForm::metric(3);
    const double density = transgression_density(DoubleForm(2, 2, 3), S);
    CHECK(density * 2 * pi * pi * r * r * r == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(transgression_density(DoubleForm(2, 2, 2), DoubleForm::metric(2)), std::invalid_argument);
  CHECK_THROWS_AS(transgression_density(DoubleForm(2, 2, 3), DoubleForm::metric(2)), std::invalid_argument);
}

TEST_CASE("geodesic S^3 caps in S^4 satisfy Gauss-Bonnet") {
  const ChartMetric s4 = testgeo::round_sphere4();
  for (double rho : {0.7, 1.9}) {
    const Rule1D rr = gauss_legendre(24, 0.0, rho), rc = gauss_legendre(12, 0.0, 0.5 * pi);
    double bulk = 0.0, boundary = 0.0;
    for (std::size_t j = 0; j < rc.nodes.size(); ++j) {
      for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
        const std::array<double, 4> p{rr.nodes[i], rc.nodes[j], 0.2, 0.4};
        bulk += 4 * pi * pi * rr.weights[i] * rc.weights[j] * pff_times_volume(s4, p);
      }
      const std::array<double, 3> y{rc.nodes[j], 0.2, 0.4};
      const LevelSetSample s = sample_level_set(s4, rho, y, Side::Below);
      boundary += 4 * pi * pi * rc.weights[j] * s.dvol_boundary * transgression_density(s.R_tangent, s.S);
    }
    CHECK(bulk + boundary == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("tube invariant densities") {
  // Circle with alpha = beta = 1 and length 2 pi.
  CHECK(tube_invariant_P(2.0, 1.0, 1.0, DoubleForm(2, 2, 1)) * 2 * pi == doctest::Approx(1.0));
  CHECK(tube_polynomial_limit(2.0, 1.0, 1.0, DoubleForm(2, 2, 1)) * 2 * pi == doctest::Approx(1.0));

  // Round S^3: both routes integrate to 1.
  const DoubleForm round = constant_curvature(3, 1.0);
  CHECK(tube_invariant_P(2.0, 1.0, 1.0, round) * 2 * pi * pi == doctest::Approx(1.0));
  CHECK(tube_polynomial_limit(2.0, 1.0, 1.0, round) * 2 * pi * pi == doctest::Approx(1.0));

  // Flat boundary: only curvature-free terms survive.
  const DoubleForm flat(2, 2, 3);
  const double a = 1.3, b = 0.7;
  CHECK(tube_invariant_P(1.7, b, a, flat) ==
        doctest::Approx((2 * std::pow(a * b, 3) + 3 * b * std::pow(a, 3)) / (4 * pi * pi)));
  CHECK(tube_polynomial_limit(1.7, b, a, flat) == doctest::Approx(-std::pow(a * b, 3) / (4 * pi * pi)));

  CHECK_THROWS_AS(tube_invariant_P(1.0, 1.0, 1.0, round), std::invalid_argument);
  CHECK_THROWS_AS(tube_polynomial_limit(2.0, 0.0, 1.0, round), std::invalid_argument);
}

TEST_CASE("tube limit polynomial matches the transgression density at small x") {
  // beta = eta - 1 collar over S^3 with y-dependent alpha and warp.
  CollarMetric cm;
  cm.eta = 2.0;
  cm.beta = 1.0;
  cm.boundary = BoundaryDescriptor::sphere3(3, 4);
  cm.alpha = ScalarField::from([](const auto&, const auto& y) {
    using std::cos;
    return 1.0 + 0.2 * cos(y[1]) * cos(y[0]);
  });
  cm.warp = ScalarField::from([](const auto& x, const auto& y) {
    using std::sin;
    return 1.0 + 0.3 * x * sin(y[0]) + 0.1 * sin(y[0]) * sin(y[0]);
  });
  const ChartMetric g = collar_to_chart(cm);
  const auto y = cm.boundary.node(9);
  const ReferenceGeometry r0 = reference_geometry(cm, 0.0, y);
  const double limit = tube_polynomial_limit(cm.eta, cm.beta, r0.alpha, r0.R_bar_bdry) * r0.dvol_h;
  double prev = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const LevelSetSample s = sample_level_set(g, eps, y);
    const double v = transgression_density(s.R_tangent, s.S) * s.dvol_boundary;
    prev = std::abs(v - limit);
    CHECK(prev < 1.0 * eps);
  }
  CHECK(prev < 1e-4);
}
