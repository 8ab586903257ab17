#pragma once

// Integrals over truncated bodies {x >= eps} and level sets {x = eps},
// polyhomogeneous fits in eps, and finite parts by the zeta and eps schemes.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rgb/curvature.hpp"
#include "rgb/metric.hpp"

namespace rgb {

struct IndexTerm {
  double s = 0.0;  // exponent
  int p = 0;       // log power
  bool operator==(const IndexTerm&) const = default;
};

/// Exponent/log pairs (s, p) of an expansion sum a_{s,p} eps^s log^p eps.
/// Each log level runs in unit steps up to its own truncation order; a term
/// (s, p >= 1) requires (s, p - 1).
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts and validates; throws std::invalid_argument when not closed.
  explicit IndexSet(std::vector<IndexTerm> terms);

  /// Integers s_min..s_max without logs, plus (s, 1) for s = 0..log_max
  /// when log_max >= 0.
  static IndexSet integers(int s_min, int s_max, int log_max = -1);

  const std::vector<IndexTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double min_exponent() const;
  double max_exponent() const;
  bool contains(double s, int p) const;
  /// Whether some (0, p >= 1) term is present.
  bool has_log_at_zero() const;
  /// Index set of f = -dV/deps when V has this index set.
  IndexSet derivative() const;

 private:
  std::vector<IndexTerm> terms_;
};

struct PhgTerm {
  double s = 0.0;
  int p = 0;
  double coefficient = 0.0;
};

struct PhgSeries {
  std::vector<PhgTerm> terms;
  double truncation = 0.0;    // largest exponent in the basis
  double residual = 0.0;      // RMS misfit of the weighted samples relative to max(1, largest magnitude)
  double condition = 0.0;     // condition number of the column-normalised design matrix
  bool ill_conditioned = false;

  double evaluate(double eps) const;
  /// Coefficient of eps^s log^p eps (0 when absent).
  double coefficient(double s, int p) const;
};

struct Sample {
  double eps = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  bool flagged = false;  // quadrature failed at some node
};

enum class Scheme { Zeta, Epsilon };
const char* scheme_name(Scheme s);

struct RenormResult {
  Scheme scheme = Scheme::Epsilon;
  double finite_part = 0.0;
  /// eps-scheme: terms with s < 0 or (s = 0, p >= 1) of V(eps).
  /// zeta scheme: non-integrable terms (s <= -1) of the density in x.
  std::vector<PhgTerm> divergent;
  double condition = 0.0;
  double residual = 0.0;
  bool ill_conditioned = false;
  bool log_at_zero = false;       // (0, p >= 1) term in V
  bool pole_at_zero = false;      // x^{-1} log^p x term in the density
  double split_point = 0.0;       // zeta: delta
  double split_deviation = 0.0;   // zeta: |FP(delta) - FP(delta/2)| / (1 + |FP|)
  std::vector<std::string> flags;
};

/// The region to integrate over: x in [eps, x_end] on a chart whose first
/// coordinate is x and whose level sets are parametrised by `level`.
/// Beyond x_collar the integration is a fixed Gauss-Legendre rule in x.
/// `copies` multiplies everything (mirror-symmetric multi-ended domains).
struct Domain {
  ChartMetric chart;
  BoundaryDescriptor level;
  double x_collar = 1.0;
  double x_end = 1.0;
  int copies = 1;
};

/// Density to integrate against dvol_g at a chart point.
using BulkDensity = std::function<double(const ChartMetric&, std::span<const double>)>;
/// Density to integrate against the induced volume of a level set.
using BoundaryDensity = std::function<double(const LevelSetSample&)>;

BulkDensity volume_density();
BulkDensity zero_density();
BulkDensity pfaffian_bulk_density(const FdOptions& fd = {});
BoundaryDensity unit_boundary_density();
BoundaryDensity transgression_boundary_density();

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

struct SweepOptions {
  int collar_nodes = 10;          // Gauss-Legendre nodes per panel in t = log x
  double max_panel_log_width = 0.35;
  int interior_panels = 6;
  int interior_nodes = 12;
  std::vector<double> extra_points;  // additional eps values (e.g. zeta split points)
  Side side = Side::Above;
  FdOptions fd;
};

/// I(eps) = copies * integral over {x = eps} of density * dvol.
std::vector<Sample> sweep_boundary(const Domain& d, const BoundaryDensity& density, std::span<const double> grid,
                                   const SweepOptions& opts = {});

struct BulkSweep {
  std::vector<Sample> volume;  // V(eps) at the grid points
  std::vector<Sample> slice;   // F(eps) = integral over {x = eps} of density * sqrt det g dy
  std::vector<Sample> extra;   // V at the extra points
  /// V at one of the grid or extra points; throws when absent.
  double volume_at(double eps) const;
};

/// V(eps) = copies * integral over {eps <= x <= x_end} of density * dvol_g.
BulkSweep sweep_bulk(const Domain& d, const BulkDensity& density, std::span<const double> grid,
                     const SweepOptions& opts = {});

/// copies * integral over {x = x0} of density * sqrt det g dy.
double slice_integral(const Domain& d, const BulkDensity& density, double x0, const FdOptions& fd = {});

/// Plain integral over a <= x <= b with Gauss-Legendre panels (no collar
/// substitution), for closed manifolds and compact pieces.
double integrate_bulk(const Domain& d, const BulkDensity& density, double a, double b, int panels = 8,
                      int nodes = 16, const FdOptions& fd = {});

struct FitOptions {
  double max_condition = 1e10;
};

/// Weighted least squares on {eps^s log^p eps}; rows scaled by eps^{-s_min},
/// columns normalised, solved by SVD. Rejects fewer than 2 samples per basis
/// term and non-finite samples.
PhgSeries fit_phg(std::span<const Sample> samples, const IndexSet& set, const FitOptions& opts = {});

RenormResult finite_part_eps(const PhgSeries& series);

/// Finite part at z = 0 of the integral of x^z F(x) over (0, end]: closed
/// forms for each term of the fitted collar expansion on (0, delta] plus the
/// absolutely convergent interior integral over [delta, end].
RenormResult finite_part_zeta(const PhgSeries& collar, double interior, double delta);

/// Finite part at z = 0 of the integral of x^z x^s log^p x over (0, delta].
double zeta_term(double s, int p, double delta);

/// eps-scheme from a bulk sweep, V fitted with `set`.
RenormResult renormalize_epsilon(const BulkSweep& sweep, const IndexSet& set, const FitOptions& fit = {});
/// zeta scheme from a bulk sweep whose extra points contain delta and
/// delta / 2; the slice F is fitted with set.derivative().
RenormResult renormalize_zeta(const BulkSweep& sweep, const IndexSet& set, double delta, const FitOptions& fit = {});

/// Default zeta split point for a grid: its largest point.
double default_split_point(std::span<const double> grid);

/// sweep_bulk -> fit -> finite part in the requested scheme.
RenormResult renormalized_integral(const Domain& d, const BulkDensity& density, Scheme scheme, const IndexSet& set,
                                   std::span<const double> grid, SweepOptions opts = {});

/// FP_{eps=0} of a boundary sweep (eps-scheme).
RenormResult renormalized_boundary_integral(const Domain& d, const BoundaryDensity& density, const IndexSet& set,
                                            std::span<const double> grid, const SweepOptions& opts = {});

/// CSV with header eps,value,<error_column>.
std::string samples_to_csv(std::span<const Sample> samples,
                           const std::string& error_column = "quadrature_error_estimate");

}  // namespace rgb
