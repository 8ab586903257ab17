#pragma once

// Command-line front end: configuration, reports, sweeps and the catalog listing.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgb/catalog.hpp"
#include "rgb/verify.hpp"

namespace rgb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

struct EntrySpec {
  std::string name;                          // catalog name, or the inline metric's name
  std::optional<InlineMetric> inline_metric;
  bool operator==(const EntrySpec&) const = default;
};

struct QuadratureConfig {
  int collar_nodes = 10;
  double max_panel_log_width = 0.35;
  int interior_panels = 6;
  int interior_nodes = 12;
  bool operator==(const QuadratureConfig&) const = default;
};

struct RunConfig {
  bool all_entries = false;  // "entries": "all"
  std::vector<EntrySpec> entries;
  SchemeChoice scheme = SchemeChoice::Both;
  std::optional<GridSpec> grid;
  QuadratureConfig quadrature;
  std::string output_directory = ".";
  std::string report = "report.json";
  std::optional<double> tolerance;
  bool properties = false;
  int property_cases = 1000;
  bool operator==(const RunConfig&) const = default;
};

/// Malformed configuration or arguments; `what()` names the line/column or field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, bool unknown_entry = false)
      : std::runtime_error(msg), unknown_entry_(unknown_entry) {}
  bool unknown_entry() const { return unknown_entry_; }

 private:
  bool unknown_entry_;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);

SchemeChoice parse_scheme(const std::string& s);
/// "a,b,n" with 0 < a < b and n >= 2.
GridSpec parse_grid(const std::string& s);

/// Entries selected by a configuration, in configuration order.
std::vector<CatalogEntry> resolve_entries(const RunConfig& config);
EvaluationOptions evaluation_options(const RunConfig& config);

struct RunOutcome {
  int exit_code = kExitOk;
  std::string report;   // JSON, deterministic for a given configuration
  std::string summary;  // one line per check
};

/// Executes every check requested by the configuration.
RunOutcome execute(const RunConfig& config);

/// Exit code from check statuses: any failure gives 2, otherwise any inconclusive gives 3.
int exit_code_for(const std::vector<VerificationReport>& reports, bool properties_passed = true);

enum class Integrand { Pfaffian, Transgression, Volume };
Integrand parse_integrand(const std::string& s);
/// CSV with header eps,value,err_est.
std::string sweep_csv(const CatalogEntry& e, Integrand integrand, const GridSpec& grid,
                      const SweepOptions& opts = {});

/// Human-readable or JSON listing, optionally restricted to one eta.
std::string catalog_listing(bool machine, std::optional<double> eta = std::nullopt);

/// Full command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rgb::cli
