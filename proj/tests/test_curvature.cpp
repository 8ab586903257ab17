#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rgb/curvature.hpp"

using namespace rgb;

namespace {

using C = std::array<double, kMaxDim * kMaxDim>;

ChartMetric round_sphere2() {
  return make_chart(2, [](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    using std::sin;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    c[0] = 1.0;
    c[3] = sin(p[0]) * sin(p[0]);
    return c;
  });
}

// dr^2 + sin^2 r (dchi^2 + sin^2 chi dphi1^2 + cos^2 chi dphi2^2)
ChartMetric round_sphere4() {
  return make_chart(4, [](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    using std::cos;
    using std::sin;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    const T s2 = sin(p[0]) * sin(p[0]);
    c[0] = 1.0;
    c[5] = s2;
    c[10] = s2 * sin(p[1]) * sin(p[1]);
    c[15] = s2 * cos(p[1]) * cos(p[1]);
    return c;
  });
}

// e^{2 phi} (dx^2 + dy^2) with phi = 0.3 sin x + 0.2 x y
ChartMetric conformal_plane() {
  return make_chart(2, [](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    using std::exp;
    using std::sin;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    const T f = exp(2.0 * (0.3 * sin(p[0]) + 0.2 * p[0] * p[1]));
    c[0] = f;
    c[3] = f;
    return c;
  });
}

ChartMetric wobbly4() {
  return make_chart(4, [](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    using std::cos;
    using std::exp;
    using std::sin;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    c[0] = 2.0 + 0.3 * sin(p[0] * p[1]);
    c[5] = 1.5 + 0.2 * cos(p[2] + p[0]);
    c[10] = 1.0 + 0.1 * exp(0.5 * p[1]) + 0.1 * p[3] * p[3];
    c[15] = 1.2 + 0.1 * sin(p[0] + p[2] * p[3]);
    c[1] = c[4] = 0.1 * sin(p[2]);
    c[6] = c[9] = 0.05 * p[0] * p[1];
    c[11] = c[14] = 0.07 * cos(p[3]);
    c[3] = c[12] = 0.04 * p[2];
    return c;
  });
}

CollarMetric hyperbolic_disc() {
  CollarMetric cm;
  cm.warp = ScalarField::from([](const auto& x, const auto&) {
    auto t = 1.0 - x * x / 4.0;
    return t * t;
  });
  return cm;
}

CollarMetric lumpy_collar4(double eta, double beta) {
  CollarMetric cm;
  cm.eta = eta;
  cm.beta = beta;
  cm.boundary = BoundaryDescriptor::sphere3(3, 4);
  cm.alpha = ScalarField::from([](const auto&, const auto& y) {
    using std::cos;
    return 1.0 + 0.2 * cos(y[1]) * cos(y[0]);
  });
  cm.warp = ScalarField::from([](const auto& x, const auto& y) {
    using std::sin;
    return 1.0 + 0.3 * x * sin(y[0]) + 0.2 * x * x * sin(y[2]) * sin(y[0]);
  });
  return cm;
}

double max_diff(const DoubleForm& a, const DoubleForm& b) {
  REQUIRE(a.coefficients().size() == b.coefficients().size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i)
    m = std::max(m, std::abs(a.coefficients()[i] - b.coefficients()[i]));
  return m;
}

}  // namespace

TEST_CASE("round spheres have unit sectional curvature") {
  const std::array<double, 2> p2{0.7, 1.3};
  const DoubleForm R2 = riemann(round_sphere2(), p2);
  CHECK(R2({0, 1}, {0, 1}) == doctest::Approx(1.0));
  CHECK(R2({0, 1}, {1, 0}) == doctest::Approx(-1.0));

  const std::array<double, 4> p4{1.1, 0.6, 0.3, 2.0};
  const DoubleForm R4 = riemann(round_sphere4(), p4);
  const DoubleForm half_g2 = 0.5 * df_power(DoubleForm::metric(4), 2);
  CHECK(max_diff(R4, half_g2) < 1e-10);
}

TEST_CASE("hyperbolic plane has curvature -1 and flat polar coordinates are flat") {
  const ChartMetric g = collar_to_chart(hyperbolic_disc());
  for (double x : {1e-3, 0.1, 0.9}) {
    const std::array<double, 2> p{x, 0.4};
    CHECK(riemann(g, p)({0, 1}, {0, 1}) == doctest::Approx(-1.0).epsilon(1e-9));
  }
  const ChartMetric flat = make_chart(2, [](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    c[0] = 1.0;
    c[3] = p[0] * p[0];
    return c;
  });
  const std::array<double, 2> q{0.8, 0.1};
  CHECK(std::abs(riemann(flat, q)({0, 1}, {0, 1})) < 1e-12);
}

TEST_CASE("conformal plane curvature matches -e^{-2phi} laplacian phi") {
  const double x = 0.4, y = -0.7;
  const double phi = 0.3 * std::sin(x) + 0.2 * x * y;
  const double lap = -0.3 * std::sin(x);
  const std::array<double, 2> p{x, y};
  CHECK(riemann(conformal_plane(), p)({0, 1}, {0, 1}) == doctest::Approx(-std::exp(-2 * phi) * lap).epsilon(1e-10));
}

TEST_CASE("curvature symmetries on a generic metric") {
  const std::array<double, 4> p{0.3, 0.5, -0.2, 0.8};
  const DoubleForm R = riemann(wobbly4(), p);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          CHECK(R({i, j}, {k, l}) == doctest::Approx(R({k, l}, {i, j})).epsilon(1e-9));
          const double bianchi = R({i, j}, {k, l}) + R({j, k}, {i, l}) + R({k, i}, {j, l});
          CHECK(std::abs(bianchi) < 1e-9);
        }
}

TEST_CASE("finite-difference curvature agrees with exact derivatives") {
  const std::array<double, 4> p{0.3, 0.5, -0.2, 0.8};
  const DoubleForm exact = riemann(wobbly4(), p);
  const DoubleForm fd = riemann(wobbly4().without_exact_derivatives(), p);
  CHECK(max_diff(exact, fd) < 1e-6);
}

TEST_CASE("frame and metric validation") {
  const std::array<double, 4> p{0.3, 0.5, -0.2, 0.8};
  const MetricJet J = wobbly4().jet(p);
  CHECK_THROWS_AS(riemann(J, Mat::Identity(4, 4)), std::invalid_argument);
  MetricJet bad = J;
  bad.g(0, 0) = 0.0;
  bad.g(0, 1) = bad.g(1, 0) = 2.0;
  CHECK_THROWS_AS(christoffel(bad), std::domain_error);
  const Mat E = adapted_frame(J.g);
  CHECK(((E.transpose() * J.g * E) - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  // Tangent vectors have no x-component.
  for (int k = 0; k < 3; ++k) CHECK(E(0, k) == 0.0);
}

TEST_CASE("christoffel symbols of polar coordinates") {
  const ChartMetric flat = make_chart(2, [](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    c[0] = 1.0;
    c[3] = p[0] * p[0];
    return c;
  });
  const std::array<double, 2> q{2.0, 0.3};
  const Christoffel G = christoffel(flat, q);
  CHECK(G(0, 1, 1) == doctest::Approx(-2.0));
  CHECK(G(1, 0, 1) == doctest::Approx(0.5));
  CHECK(G(1, 1, 0) == doctest::Approx(0.5));
  CHECK(G(0, 0, 0) == 0.0);
}

TEST_CASE("level sets of the hyperbolic disc are circles of curvature coth r") {
  const ChartMetric g = collar_to_chart(hyperbolic_disc());
  for (double eps : {1e-3, 0.05, 0.5, 1.5}) {
    const double r = std::log(2.0 / eps);
    const std::array<double, 1> y{0.9};
    const DoubleForm S = sff_level_set(g, eps, y);
    CHECK(S({0}, {0}) == doctest::Approx(1.0 / std::tanh(r)).epsilon(1e-10));
    CHECK(sff_level_set(g, eps, y, Side::Below)({0}, {0}) == doctest::Approx(-1.0 / std::tanh(r)).epsilon(1e-10));
    const DoubleForm phi = sff_model(hyperbolic_disc(), eps, y);
    CHECK(phi({0}, {0}) == doctest::Approx(1.0 / std::tanh(r)).epsilon(1e-10));
  }
}

TEST_CASE("geodesic circles on the round sphere") {
  // Region r <= rho, normal pointing into it: S = cot rho.
  for (double rho : {0.3, 1.0, 2.5}) {
    const std::array<double, 1> y{0.0};
    CHECK(sff_level_set(round_sphere2(), rho, y, Side::Below)({0}, {0}) ==
          doctest::Approx(std::cos(rho) / std::sin(rho)).epsilon(1e-10));
  }
}

TEST_CASE("model curvature and second fundamental form match the chart computation") {
  for (auto [eta, beta] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 0.0}, std::pair{1.5, 0.5}}) {
    const CollarMetric cm = lumpy_collar4(eta, beta);
    const ChartMetric g = collar_to_chart(cm);
    for (double eps : {0.02, 0.3}) {
      for (std::size_t n : {std::size_t{0}, std::size_t{7}, std::size_t{20}}) {
        const auto y = cm.boundary.node(n);
        const LevelSetSample s = sample_level_set(g, eps, y);
        const DoubleForm Rm = curvature_model(cm, eps, y);
        const DoubleForm Sm = sff_model(cm, eps, y);
        const double scaleR = std::max(1.0, s.R_tangent.max_abs());
        const double scaleS = std::max(1.0, s.S.max_abs());
        CHECK(max_diff(s.R_tangent, Rm) / scaleR < 1e-9);
        CHECK(max_diff(s.S, Sm) / scaleS < 1e-10);
        const DoubleForm Sfd = sff_level_set(g.without_exact_derivatives(), eps, y);
        CHECK(max_diff(Sfd, Sm) / scaleS < 1e-6);
      }
    }
  }
}

TEST_CASE("induced boundary data") {
  const CollarMetric cm = lumpy_collar4(1.0, 1.0);
  const ChartMetric g = collar_to_chart(cm);
  const double eps = 0.1;
  const InducedBoundaryData d = induced_boundary_data(g, cm.boundary, eps);
  REQUIRE(d.weights.size() == cm.boundary.size());
  for (std::size_t n = 0; n < cm.boundary.size(); n += 5) {
    const Mat h = cm.h(eps, cm.boundary.node(n));
    CHECK(d.weights[n] == doctest::Approx(std::sqrt(h.determinant()) / std::pow(eps, 3)).epsilon(1e-12));
    CHECK(d.frames[n].cols() == 3);
    const std::array<double, 4> p{eps, cm.boundary.node(n)[0], cm.boundary.node(n)[1], cm.boundary.node(n)[2]};
    const Mat gm = g(p);
    CHECK(((d.frames[n].transpose() * gm * d.frames[n]) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  }
}
