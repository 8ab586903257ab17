#include "rgb/gb_integrands.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rgb {
namespace {

const double pi = std::numbers::pi;

// Our curvature form is the negative of the one the permutation formulas
// are written for.
constexpr double kCurvatureSign = -1.0;

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double double_factorial(int n) {
  double r = 1.0;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

void check_curvature(const DoubleForm& R, const char* what) {
  if (R.p() != 2 || R.q() != 2) throw std::invalid_argument(std::string(what) + ": curvature must be a (2,2) form");
}

double full_value(const DoubleForm& f) {
  std::vector<int> I(static_cast<std::size_t>(f.dim()));
  std::iota(I.begin(), I.end(), 0);
  return f(std::span<const int>(I), std::span<const int>(I));
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

double sphere_volume(int k) {
  if (k < 0) throw std::invalid_argument("sphere dimension must be non-negative");
  return 2.0 * std::pow(pi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

double pfaffian_density(const DoubleForm& R) {
  check_curvature(R, "pfaffian_density");
  const int m = R.dim();
  if (m % 2 != 0) throw std::invalid_argument("pfaffian_density: odd dimension");
  const int n = m / 2;
  std::vector<DoubleForm> factors(static_cast<std::size_t>(n), kCurvatureSign * R);
  const double c = std::pow(-1.0, n) / (std::pow(2.0, 3 * n) * std::pow(pi, n) * factorial(n));
  return c * permutation_contraction(factors);
}

double pfaffian_density_via_power(const DoubleForm& R) {
  check_curvature(R, "pfaffian_density");
  const int m = R.dim();
  if (m % 2 != 0) throw std::invalid_argument("pfaffian_density: odd dimension");
  const int n = m / 2;
  const double c = std::pow(-1.0, n) / (std::pow(2.0, 3 * n) * std::pow(pi, n) * factorial(n));
  const double ratio = std::pow(4.0, n);  // (2! 2!)^n
  return c * ratio * full_value(df_power(kCurvatureSign * R, n));
}

double transgression_density(const DoubleForm& R_tangent, const DoubleForm& S) {
  check_curvature(R_tangent, "transgression_density");
  if (S.p() != 1 || S.q() != 1) throw std::invalid_argument("transgression_density: S must be a (1,1) form");
  const int d = S.dim();
  if (R_tangent.dim() != d) throw std::invalid_argument("transgression_density: frame dimensions differ");
  const int m = d + 1;
  if (m % 2 != 0) throw std::invalid_argument("transgression_density: odd ambient dimension");
  const int n = m / 2;
  const DoubleForm Rs = kCurvatureSign * R_tangent;
  double total = 0.0;
  for (int q = 0; q < n; ++q) {
    const int k = m - 1 - 2 * q;
    std::vector<DoubleForm> factors;
    for (int i = 0; i < q; ++i) factors.push_back(Rs);
    for (int i = 0; i < k; ++i) factors.push_back(S);
    const double c =
        std::pow(-1.0, q) / (std::pow(2.0, 3 * q) * std::pow(pi, q) * factorial(q) * sphere_volume(k) * factorial(k));
    total += c * permutation_contraction(factors);
  }
  return total;
}

double tube_invariant_P(double eta, double beta, double alpha, const DoubleForm& R_bar_bdry) {
  if (!near(beta, eta - 1.0)) throw std::invalid_argument("tube_invariant_P needs beta = eta - 1");
  check_curvature(R_bar_bdry, "tube_invariant_P");
  const int d = R_bar_bdry.dim();
  const int m = d + 1;
  if (m % 2 != 0) throw std::invalid_argument("tube_invariant_P: odd ambient dimension");
  const DoubleForm g = DoubleForm::metric(d);
  double total = 0.0;
  for (int q = 0; q <= m / 2 - 1; ++q)
    for (int j = 0; j <= q; ++j) {
      const double c = std::pow(-1.0, j) * std::pow(beta, m - 1 - 2 * q) * std::pow(alpha, m - 1 - 2 * j) /
                       (double_factorial(m - 1 - 2 * q) * factorial(j) * factorial(q - j) * std::pow(2.0, q - j));
      total += c * full_value(df_product(df_power(R_bar_bdry, j), df_power(g, m - 1 - 2 * j)));
    }
  return total / std::pow(2.0 * pi, 0.5 * m);
}

double tube_polynomial_limit(double eta, double beta, double alpha, const DoubleForm& R_bar_bdry) {
  if (!near(beta, eta - 1.0)) throw std::invalid_argument("tube_polynomial_limit needs beta = eta - 1");
  check_curvature(R_bar_bdry, "tube_polynomial_limit");
  const int d = R_bar_bdry.dim();
  const double ab = alpha * beta;
  const DoubleForm g = DoubleForm::metric(d);
  const DoubleForm R = R_bar_bdry - (0.5 * ab * ab) * df_power(g, 2);
  return transgression_density(R, ab * g);
}

double boundary_tube_integral(const CollarMetric& cm, TubeFormula formula) {
  double total = 0.0;
  for (std::size_t n = 0; n < cm.boundary.size(); ++n) {
    const auto y = cm.boundary.node(n);
    const ReferenceGeometry r = reference_geometry(cm, 0.0, y);
    const double density = (formula == TubeFormula::Displayed)
                               ? tube_invariant_P(cm.eta, cm.beta, r.alpha, r.R_bar_bdry)
                               : tube_polynomial_limit(cm.eta, cm.beta, r.alpha, r.R_bar_bdry);
    total += cm.boundary.weight(n) * density * r.dvol_h;
  }
  return total;
}

}  // namespace rgb
