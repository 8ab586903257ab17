#pragma once

// Exactly solvable example manifolds with known Euler characteristics.

#include <optional>
#include <string>
#include <vector>

#include "rgb/metric.hpp"
#include "rgb/renorm.hpp"

namespace rgb {

struct GridSpec {
  double lo = 1e-4;
  double hi = 1e-1;
  int n = 24;
  std::vector<double> points() const { return log_grid(lo, hi, n); }
  bool operator==(const GridSpec&) const = default;
};

/// Tolerances used by the checks; declared per entry.
struct Tolerances {
  double gauss_bonnet = 1e-4;      // |RInt Pff + FP boundary - chi|
  double boundary_zero = 1e-8;     // |FP boundary| for beta = 0
  double bulk = 1e-6;              // |RInt Pff - chi| for beta = 0
  double pairwise = 1e-6;          // scattering three-way comparison
  double even = 1e-4;              // |RInt Pff - chi| for even conformally compact metrics
  double cross_validation = 1e-4;  // relative deviation of the model curvature
  double scheme = 1e-6;            // |FP_zeta - FP_eps| <= scheme * (1 + |FP|)
  double volume_relative = 1e-4;   // renormalized volume against its closed form
  double closed = 1e-6;            // closed manifolds
  double fit_residual = 1e-6;      // larger fit residuals make a check inconclusive
};

struct ExpectedValue {
  double value = 0.0;
  std::string note;
};

struct CatalogEntry {
  CatalogEntry(std::string entry_name, Domain entry_domain)
      : name(std::move(entry_name)), domain(std::move(entry_domain)) {}

  std::string name;
  int dim = 2;
  bool closed = false;
  std::optional<CollarMetric> collar;  // absent for closed manifolds
  Domain domain;
  int chi = 0;
  std::string topology;

  IndexSet volume_set;
  IndexSet pfaffian_set;
  IndexSet boundary_set;
  GridSpec grid;
  Tolerances tol;

  std::optional<ExpectedValue> renormalized_volume;
  std::optional<ExpectedValue> renormalized_pfaffian;
  std::optional<ExpectedValue> boundary_finite_part;

  bool exploratory = false;
  std::string notes;

  double eta() const { return collar ? collar->eta : 0.0; }
  double beta() const { return collar ? collar->beta : 0.0; }
};

/// All entries in canonical order.
const std::vector<CatalogEntry>& catalog();
std::vector<std::string> catalog_names();
/// Throws std::out_of_range listing the available names.
const CatalogEntry& catalog_entry(const std::string& name);

/// Lowest exponent of V(eps) for the volume density.
int volume_exponent(double eta, double beta, int m);
/// Lowest exponent of the boundary term (and of the Pfaffian volume), never above 0.
int boundary_exponent(double eta, double beta, int m, bool alpha_beta_nonzero);

/// A user-specified collar metric with h_x = w(x) h_B and w a polynomial.
struct InlineMetric {
  std::string name;
  double eta = 1.0;
  double beta = 1.0;
  std::vector<double> warp{1.0};  // coefficients of w in powers of x
  std::string boundary = "S1";    // S1, S3, T1, T2, T3
  double x_collar = 1.0;
  double x_end = 1.0;
  int copies = 1;
  int chi = 0;
  int truncation = 6;
  bool volume_log = false;
  GridSpec grid;
  bool operator==(const InlineMetric&) const = default;
};

/// Builds a catalog-style entry; throws std::invalid_argument on bad input.
CatalogEntry entry_from_inline(const InlineMetric& spec);

}  // namespace rgb
