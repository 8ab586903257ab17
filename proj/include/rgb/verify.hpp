#pragma once

// Identity checks on catalog entries, reported as plain data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgb/catalog.hpp"
#include "rgb/renorm.hpp"

namespace rgb {

enum class Status { Pass, Fail, Inconclusive, Skipped, Exploratory };
const char* status_name(Status s);

struct ReportTerm {
  std::string name;
  double value = 0.0;
};

struct VerificationReport {
  std::string entry;
  std::string identity;
  std::vector<ReportTerm> lhs;  // contributions; lhs_total is their sum in order
  double lhs_total = 0.0;
  double rhs = 0.0;
  double error = 0.0;  // |lhs_total - rhs|
  double tolerance = 0.0;
  Status status = Status::Skipped;
  std::vector<ReportTerm> diagnostics;  // fit residuals, conditions, auxiliary values
  std::vector<std::string> flags;
  std::string reason;  // why skipped / inconclusive / exploratory

  bool passed() const { return status == Status::Pass; }
};

enum class SchemeChoice { Zeta, Epsilon, Both };
const char* scheme_choice_name(SchemeChoice s);

struct EvaluationOptions {
  SchemeChoice scheme = SchemeChoice::Both;
  std::optional<GridSpec> grid;      // replaces the entry's grid
  std::optional<double> tolerance;   // replaces every tolerance of the entry
  SweepOptions sweep;
};

/// All sweeps and finite parts of one entry, computed once and shared by the checks.
struct EntryEvaluation {
  std::string entry;
  std::vector<double> grid;
  std::optional<RenormResult> volume_eps, volume_zeta;
  std::optional<RenormResult> pfaffian_eps, pfaffian_zeta;
  std::optional<RenormResult> boundary;
  std::optional<double> closed_integral;  // closed manifolds
  std::vector<std::string> errors;        // fits or sweeps that could not be completed

  /// Preferred finite part: epsilon unless only zeta was computed.
  const std::optional<RenormResult>& volume() const { return volume_eps ? volume_eps : volume_zeta; }
  const std::optional<RenormResult>& pfaffian() const { return pfaffian_eps ? pfaffian_eps : pfaffian_zeta; }
};

/// Tolerances of the entry after applying the override.
Tolerances effective_tolerances(const CatalogEntry& e, const EvaluationOptions& opts);

EntryEvaluation evaluate_entry(const CatalogEntry& e, const EvaluationOptions& opts = {});

/// RInt Pff + FP boundary = chi (closed entries: integral of Pff = chi).
VerificationReport soft_gb(const CatalogEntry& e, const EntryEvaluation& ev, const EvaluationOptions& opts = {});
/// beta = 0: FP boundary = 0 and RInt Pff = chi, as two reports.
std::vector<VerificationReport> check_beta_zero(const CatalogEntry& e, const EntryEvaluation& ev,
                                                const EvaluationOptions& opts = {});
/// eta > 1, beta = eta - 1, alpha = 1: FP boundary against chi - RInt Pff, and the
/// boundary integral of the limiting tube polynomial against FP boundary.
/// The displayed closed formula is reported as a diagnostic of the second.
std::vector<VerificationReport> check_scattering(const CatalogEntry& e, const EntryEvaluation& ev,
                                                 const EvaluationOptions& opts = {});
/// eta = beta = 1 and even: RInt Pff = chi.
VerificationReport check_even_cc(const CatalogEntry& e, const EntryEvaluation& ev, const EvaluationOptions& opts = {});
/// Model second fundamental form and tangential curvature against the chart
/// computation with finite-difference derivatives on the entry's grid.
VerificationReport cross_validate_curvature(const CatalogEntry& e, const EvaluationOptions& opts = {});
/// |FP_zeta - FP_eps| <= tol (1 + |FP|) for the volume and the Pfaffian.
std::vector<VerificationReport> check_scheme_agreement(const CatalogEntry& e, const EntryEvaluation& ev,
                                                       const EvaluationOptions& opts = {});
/// Renormalized volume against the entry's closed form (relative).
VerificationReport check_renormalized_volume(const CatalogEntry& e, const EntryEvaluation& ev,
                                             const EvaluationOptions& opts = {});

/// Every applicable check of one entry, in a fixed order.
std::vector<VerificationReport> verify_entry(const CatalogEntry& e, const EvaluationOptions& opts = {});
std::vector<VerificationReport> verify_entry(const CatalogEntry& e, const EntryEvaluation& ev,
                                             const EvaluationOptions& opts = {});

struct PropertyResult {
  std::string name;
  int cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
};

/// Randomized suites: Riemann symmetries on every catalog chart, double-form
/// graded commutativity and associativity, permutation sum against
/// double-form power, and model against level-set second fundamental forms.
std::vector<PropertyResult> run_property_suites(std::uint64_t seed, int cases = 1000);

/// Seed from RGB_SEED when set, otherwise the fallback.
std::uint64_t property_seed(std::uint64_t fallback = 20240521);

}  // namespace rgb
