#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "rgb/gb_integrands.hpp"

namespace rgb::cli {

using ojson = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- reading

std::string field(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  throw ConfigError("field '" + path + "': " + what);
}

void require_object(const ojson& j, const std::string& path) {
  if (!j.is_object()) bad_field(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const ojson& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) bad_field(field(path, it.key()), "unknown key");
  }
}

double read_number(const ojson& j, const std::string& path) {
  if (!j.is_number()) bad_field(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad_field(path, "expected a finite number");
  return v;
}

int read_integer(const ojson& j, const std::string& path) {
  if (!j.is_number_integer()) bad_field(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -1000000000LL || v > 1000000000LL) bad_field(path, "integer out of range");
  return static_cast<int>(v);
}

bool read_bool(const ojson& j, const std::string& path) {
  if (!j.is_boolean()) bad_field(path, "expected true or false");
  return j.get<bool>();
}

std::string read_string(const ojson& j, const std::string& path) {
  if (!j.is_string()) bad_field(path, "expected a string");
  return j.get<std::string>();
}

template <class F>
void optional_key(const ojson& j, const std::string& path, const char* key, F&& apply) {
  if (j.contains(key)) apply(j.at(key), field(path, key));
}

void validate_grid(const GridSpec& g, const std::string& path) {
  if (!(g.lo > 0.0) || !(g.hi > g.lo)) bad_field(path, "grid needs 0 < lo < hi");
  if (g.n < 2) bad_field(path, "grid needs at least 2 points");
}

GridSpec read_grid(const ojson& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"lo", "hi", "n"});
  for (const char* k : {"lo", "hi", "n"})
    if (!j.contains(k)) bad_field(field(path, k), "missing");
  GridSpec g;
  g.lo = read_number(j.at("lo"), field(path, "lo"));
  g.hi = read_number(j.at("hi"), field(path, "hi"));
  g.n = read_integer(j.at("n"), field(path, "n"));
  validate_grid(g, path);
  return g;
}

InlineMetric read_inline(const ojson& j, const std::string& path) {
  reject_unknown(j, path,
                 {"name", "eta", "beta", "warp", "boundary", "x_collar", "x_end", "copies", "chi", "truncation",
                  "volume_log", "grid"});
  InlineMetric m;
  if (!j.contains("name")) bad_field(field(path, "name"), "missing");
  m.name = read_string(j.at("name"), field(path, "name"));
  optional_key(j, path, "eta", [&](const ojson& v, const std::string& p) { m.eta = read_number(v, p); });
  optional_key(j, path, "beta", [&](const ojson& v, const std::string& p) { m.beta = read_number(v, p); });
  optional_key(j, path, "warp", [&](const ojson& v, const std::string& p) {
    if (!v.is_array() || v.empty()) bad_field(p, "expected a non-empty array of numbers");
    m.warp.clear();
    for (std::size_t i = 0; i < v.size(); ++i) m.warp.push_back(read_number(v[i], p + "[" + std::to_string(i) + "]"));
  });
  optional_key(j, path, "boundary", [&](const ojson& v, const std::string& p) { m.boundary = read_string(v, p); });
  optional_key(j, path, "x_collar", [&](const ojson& v, const std::string& p) { m.x_collar = read_number(v, p); });
  optional_key(j, path, "x_end", [&](const ojson& v, const std::string& p) { m.x_end = read_number(v, p); });
  optional_key(j, path, "copies", [&](const ojson& v, const std::string& p) { m.copies = read_integer(v, p); });
  optional_key(j, path, "chi", [&](const ojson& v, const std::string& p) { m.chi = read_integer(v, p); });
  optional_key(j, path, "truncation",
               [&](const ojson& v, const std::string& p) { m.truncation = read_integer(v, p); });
  optional_key(j, path, "volume_log", [&](const ojson& v, const std::string& p) { m.volume_log = read_bool(v, p); });
  optional_key(j, path, "grid", [&](const ojson& v, const std::string& p) { m.grid = read_grid(v, p); });
  return m;
}

// ---------------------------------------------------------------- writing

ojson grid_json(const GridSpec& g) { return ojson{{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}}; }

ojson inline_json(const InlineMetric& m) {
  return ojson{{"name", m.name},         {"eta", m.eta},
               {"beta", m.beta},         {"warp", m.warp},
               {"boundary", m.boundary}, {"x_collar", m.x_collar},
               {"x_end", m.x_end},       {"copies", m.copies},
               {"chi", m.chi},           {"truncation", m.truncation},
               {"volume_log", m.volume_log}, {"grid", grid_json(m.grid)}};
}

ojson config_json(const RunConfig& c) {
  ojson j;
  if (c.all_entries) {
    j["entries"] = "all";
  } else {
    j["entries"] = ojson::array();
    for (const auto& e : c.entries) j["entries"].push_back(e.inline_metric ? inline_json(*e.inline_metric) : ojson(e.name));
  }
  j["scheme"] = scheme_choice_name(c.scheme);
  if (c.grid) j["grid"] = grid_json(*c.grid);
  j["quadrature"] = ojson{{"collar_nodes", c.quadrature.collar_nodes},
                          {"max_panel_log_width", c.quadrature.max_panel_log_width},
                          {"interior_panels", c.quadrature.interior_panels},
                          {"interior_nodes", c.quadrature.interior_nodes}};
  j["output"] = ojson{{"directory", c.output_directory}, {"report", c.report}};
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  j["properties"] = ojson{{"enabled", c.properties}, {"cases", c.property_cases}};
  return j;
}

ojson terms_json(const std::vector<ReportTerm>& terms) {
  ojson a = ojson::array();
  for (const auto& t : terms) a.push_back(ojson{{"name", t.name}, {"value", t.value}});
  return a;
}

ojson report_json(const VerificationReport& r) {
  return ojson{{"identity", r.identity},
               {"status", status_name(r.status)},
               {"lhs", terms_json(r.lhs)},
               {"lhs_total", r.lhs_total},
               {"rhs", r.rhs},
               {"error", r.error},
               {"tolerance", r.tolerance},
               {"diagnostics", terms_json(r.diagnostics)},
               {"flags", r.flags},
               {"reason", r.reason}};
}

ojson renorm_json(const RenormResult& r) {
  ojson divergent = ojson::array();
  for (const auto& t : r.divergent) divergent.push_back(ojson{{"s", t.s}, {"p", t.p}, {"coefficient", t.coefficient}});
  ojson j{{"scheme", scheme_name(r.scheme)},
          {"finite_part", r.finite_part},
          {"divergent", divergent},
          {"condition", r.condition},
          {"residual", r.residual},
          {"ill_conditioned", r.ill_conditioned},
          {"log_at_zero", r.log_at_zero},
          {"pole_at_zero", r.pole_at_zero}};
  if (r.scheme == Scheme::Zeta) {
    j["split_point"] = r.split_point;
    j["split_deviation"] = r.split_deviation;
  }
  j["flags"] = r.flags;
  return j;
}

ojson finite_parts_json(const EntryEvaluation& ev) {
  ojson j = ojson::object();
  const auto put = [&](const char* key, const std::optional<RenormResult>& r) {
    if (r) j[key] = renorm_json(*r);
  };
  put("volume_epsilon", ev.volume_eps);
  put("volume_zeta", ev.volume_zeta);
  put("pfaffian_epsilon", ev.pfaffian_eps);
  put("pfaffian_zeta", ev.pfaffian_zeta);
  put("boundary", ev.boundary);
  if (ev.closed_integral) j["closed_integral"] = *ev.closed_integral;
  return j;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string expected_line(const char* label, const std::optional<ExpectedValue>& v) {
  if (!v) return {};
  return std::string("    ") + label + " = " + format_number(v->value) + "  (" + v->note + ")\n";
}

ojson expected_json(const std::optional<ExpectedValue>& v) {
  if (!v) return nullptr;
  return ojson{{"value", v->value}, {"note", v->note}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------- configuration

SchemeChoice parse_scheme(const std::string& s) {
  if (s == "zeta") return SchemeChoice::Zeta;
  if (s == "epsilon") return SchemeChoice::Epsilon;
  if (s == "both") return SchemeChoice::Both;
  throw ConfigError("unknown scheme '" + s + "' (expected zeta, epsilon or both)");
}

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf,%d%c", &g.lo, &g.hi, &g.n, &tail) != 3)
    throw ConfigError("grid '" + s + "' must have the form lo,hi,n");
  validate_grid(g, "--grid");
  return g;
}

RunConfig parse_config(const std::string& text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(root, "");
  reject_unknown(root, "", {"entries", "scheme", "grid", "quadrature", "output", "tolerance", "properties"});
  RunConfig c;
  if (!root.contains("entries")) bad_field("entries", "missing");
  const ojson& entries = root.at("entries");
  if (entries.is_string()) {
    if (entries.get<std::string>() != "all") bad_field("entries", "expected \"all\" or an array");
    c.all_entries = true;
  } else if (entries.is_array()) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string p = "entries[" + std::to_string(i) + "]";
      const ojson& e = entries[i];
      if (e.is_string()) {
        c.entries.push_back(EntrySpec{e.get<std::string>(), std::nullopt});
      } else if (e.is_object()) {
        InlineMetric m = read_inline(e, p);
        c.entries.push_back(EntrySpec{m.name, std::move(m)});
      } else {
        bad_field(p, "expected a catalog name or an inline metric object");
      }
    }
  } else {
    bad_field("entries", "expected \"all\" or an array");
  }
  optional_key(root, "", "scheme", [&](const ojson& v, const std::string& p) {
    try {
      c.scheme = parse_scheme(read_string(v, p));
    } catch (const ConfigError& e) {
      bad_field(p, e.what());
    }
  });
  optional_key(root, "", "grid", [&](const ojson& v, const std::string& p) { c.grid = read_grid(v, p); });
  optional_key(root, "", "quadrature", [&](const ojson& v, const std::string& p) {
    require_object(v, p);
    reject_unknown(v, p, {"collar_nodes", "max_panel_log_width", "interior_panels", "interior_nodes"});
    auto& q = c.quadrature;
    optional_key(v, p, "collar_nodes", [&](const ojson& x, const std::string& f) { q.collar_nodes = read_integer(x, f); });
    optional_key(v, p, "max_panel_log_width",
                 [&](const ojson& x, const std::string& f) { q.max_panel_log_width = read_number(x, f); });
    optional_key(v, p, "interior_panels",
                 [&](const ojson& x, const std::string& f) { q.interior_panels = read_integer(x, f); });
    optional_key(v, p, "interior_nodes",
                 [&](const ojson& x, const std::string& f) { q.interior_nodes = read_integer(x, f); });
    if (q.collar_nodes < 2 || q.collar_nodes > 64) bad_field(field(p, "collar_nodes"), "expected 2..64");
    if (q.interior_nodes < 2 || q.interior_nodes > 64) bad_field(field(p, "interior_nodes"), "expected 2..64");
    if (q.interior_panels < 1) bad_field(field(p, "interior_panels"), "expected at least 1");
    if (!(q.max_panel_log_width > 0.0)) bad_field(field(p, "max_panel_log_width"), "expected a positive number");
  });
  optional_key(root, "", "output", [&](const ojson& v, const std::string& p) {
    require_object(v, p);
    reject_unknown(v, p, {"directory", "report"});
    optional_key(v, p, "directory",
                 [&](const ojson& x, const std::string& f) { c.output_directory = read_string(x, f); });
    optional_key(v, p, "report", [&](const ojson& x, const std::string& f) { c.report = read_string(x, f); });
    if (c.report.empty()) bad_field(field(p, "report"), "expected a file name");
  });
  optional_key(root, "", "tolerance", [&](const ojson& v, const std::string& p) {
    c.tolerance = read_number(v, p);
    if (!(*c.tolerance > 0.0)) bad_field(p, "expected a positive number");
  });
  optional_key(root, "", "properties", [&](const ojson& v, const std::string& p) {
    require_object(v, p);
    reject_unknown(v, p, {"enabled", "cases"});
    optional_key(v, p, "enabled", [&](const ojson& x, const std::string& f) { c.properties = read_bool(x, f); });
    optional_key(v, p, "cases", [&](const ojson& x, const std::string& f) { c.property_cases = read_integer(x, f); });
    if (c.property_cases < 1) bad_field(field(p, "cases"), "expected at least 1");
  });
  return c;
}

std::string serialize_config(const RunConfig& config) { return config_json(config).dump(2) + "\n"; }

std::vector<CatalogEntry> resolve_entries(const RunConfig& config) {
  if (config.all_entries) return catalog();
  std::vector<CatalogEntry> out;
  std::set<std::string> seen;
  const auto names = catalog_names();
  for (std::size_t i = 0; i < config.entries.size(); ++i) {
    const auto& spec = config.entries[i];
    const std::string p = "entries[" + std::to_string(i) + "]";
    if (!seen.insert(spec.name).second) bad_field(p, "duplicate entry '" + spec.name + "'");
    if (spec.inline_metric) {
      if (std::find(names.begin(), names.end(), spec.name) != names.end())
        bad_field(p, "inline metric name '" + spec.name + "' is a catalog name");
      try {
        out.push_back(entry_from_inline(*spec.inline_metric));
      } catch (const std::invalid_argument& e) {
        bad_field(p, e.what());
      }
    } else {
      try {
        out.push_back(catalog_entry(spec.name));
      } catch (const std::out_of_range&) {
        throw ConfigError("field '" + p + "': unknown entry '" + spec.name + "'", true);
      }
    }
  }
  return out;
}

EvaluationOptions evaluation_options(const RunConfig& config) {
  EvaluationOptions opts;
  opts.scheme = config.scheme;
  opts.grid = config.grid;
  opts.tolerance = config.tolerance;
  opts.sweep.collar_nodes = config.quadrature.collar_nodes;
  opts.sweep.max_panel_log_width = config.quadrature.max_panel_log_width;
  opts.sweep.interior_panels = config.quadrature.interior_panels;
  opts.sweep.interior_nodes = config.quadrature.interior_nodes;
  return opts;
}

// ---------------------------------------------------------------- run

int exit_code_for(const std::vector<VerificationReport>& reports, bool properties_passed) {
  bool fail = !properties_passed, inconclusive = false;
  for (const auto& r : reports) {
    fail = fail || r.status == Status::Fail;
    inconclusive = inconclusive || r.status == Status::Inconclusive;
  }
  return fail ? kExitFail : inconclusive ? kExitInconclusive : kExitOk;
}

RunOutcome execute(const RunConfig& config) {
  const std::vector<CatalogEntry> entries = resolve_entries(config);
  const EvaluationOptions opts = evaluation_options(config);

  ojson report;
  report["format"] = "rgb-report-1";
  report["config"] = config_json(config);
  report["entries"] = ojson::array();
  std::vector<VerificationReport> all;
  std::ostringstream summary;
  for (const auto& e : entries) {
    const EntryEvaluation ev = evaluate_entry(e, opts);
    const auto reports = verify_entry(e, ev, opts);
    ojson je{{"name", e.name}, {"dim", e.dim}, {"closed", e.closed}};
    if (e.collar) {
      je["eta"] = e.eta();
      je["beta"] = e.beta();
    }
    je["chi"] = e.chi;
    je["exploratory"] = e.exploratory;
    je["finite_parts"] = finite_parts_json(ev);
    je["errors"] = ev.errors;
    je["checks"] = ojson::array();
    for (const auto& r : reports) {
      je["checks"].push_back(report_json(r));
      char line[512];
      std::snprintf(line, sizeof line, "%-13s %-20s %-36s error %-12.4g tol %.1g\n", status_name(r.status),
                    e.name.c_str(), r.identity.c_str(), r.error, r.tolerance);
      summary << line;
      all.push_back(r);
    }
    report["entries"].push_back(std::move(je));
  }

  bool properties_passed = true;
  if (config.properties) {
    report["properties"] = ojson::array();
    for (const auto& p : run_property_suites(property_seed(), config.property_cases)) {
      report["properties"].push_back(ojson{{"name", p.name},
                                           {"cases", p.cases},
                                           {"max_error", p.max_error},
                                           {"tolerance", p.tolerance},
                                           {"passed", p.passed}});
      properties_passed = properties_passed && p.passed;
      char line[512];
      std::snprintf(line, sizeof line, "%-13s %-20s %-36s error %-12.4g tol %.1g\n", p.passed ? "pass" : "fail",
                    "properties", p.name.c_str(), p.max_error, p.tolerance);
      summary << line;
    }
  }

  std::map<std::string, int> counts;
  for (Status s : {Status::Pass, Status::Fail, Status::Inconclusive, Status::Skipped, Status::Exploratory})
    counts[status_name(s)] = 0;
  for (const auto& r : all) ++counts[status_name(r.status)];
  ojson sj{{"checks", all.size()}};
  for (Status s : {Status::Pass, Status::Fail, Status::Inconclusive, Status::Skipped, Status::Exploratory})
    sj[status_name(s)] = counts[status_name(s)];
  RunOutcome out;
  out.exit_code = exit_code_for(all, properties_passed);
  sj["exit_code"] = out.exit_code;
  report["summary"] = sj;
  out.report = report.dump(2) + "\n";
  out.summary = summary.str();
  return out;
}

// ---------------------------------------------------------------- sweep

Integrand parse_integrand(const std::string& s) {
  if (s == "pff") return Integrand::Pfaffian;
  if (s == "transgression") return Integrand::Transgression;
  if (s == "volume") return Integrand::Volume;
  throw ConfigError("unknown integrand '" + s + "' (expected pff, transgression or volume)");
}

std::string sweep_csv(const CatalogEntry& e, Integrand integrand, const GridSpec& grid, const SweepOptions& opts) {
  if (e.closed) throw ConfigError("entry '" + e.name + "' is closed and has no eps-sweep");
  const auto points = grid.points();
  for (double p : points)
    if (p > e.domain.x_collar) throw ConfigError("grid extends beyond the collar of '" + e.name + "'");
  std::vector<Sample> samples;
  switch (integrand) {
    case Integrand::Pfaffian:
      samples = sweep_bulk(e.domain, pfaffian_bulk_density(opts.fd), points, opts).volume;
      break;
    case Integrand::Volume:
      samples = sweep_bulk(e.domain, volume_density(), points, opts).volume;
      break;
    case Integrand::Transgression:
      samples = sweep_boundary(e.domain, transgression_boundary_density(), points, opts);
      break;
  }
  return samples_to_csv(samples, "err_est");
}

// ---------------------------------------------------------------- catalog

std::string catalog_listing(bool machine, std::optional<double> eta) {
  std::vector<const CatalogEntry*> selected;
  for (const auto& e : catalog())
    if (!eta || (e.collar && e.eta() == *eta)) selected.push_back(&e);
  if (machine) {
    ojson a = ojson::array();
    for (const auto* e : selected) {
      ojson j{{"name", e->name}, {"dim", e->dim}, {"closed", e->closed}};
      j["eta"] = e->collar ? ojson(e->eta()) : ojson(nullptr);
      j["beta"] = e->collar ? ojson(e->beta()) : ojson(nullptr);
      j["chi"] = e->chi;
      j["topology"] = e->topology;
      j["renormalized_volume"] = expected_json(e->renormalized_volume);
      j["renormalized_pfaffian"] = expected_json(e->renormalized_pfaffian);
      j["boundary_finite_part"] = expected_json(e->boundary_finite_part);
      j["grid"] = grid_json(e->grid);
      j["exploratory"] = e->exploratory;
      j["notes"] = e->notes;
      a.push_back(std::move(j));
    }
    return a.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto* e : selected) {
    out << e->name << "  dim " << e->dim;
    if (e->collar)
      out << "  (eta, beta) = (" << format_number(e->eta()) << ", " << format_number(e->beta()) << ")";
    else
      out << "  closed";
    out << "  chi = " << e->chi;
    if (e->exploratory) out << "  [exploratory]";
    out << "\n";
    if (!e->topology.empty()) out << "    topology: " << e->topology << "\n";
    out << expected_line("renormalized volume", e->renormalized_volume)
        << expected_line("renormalized Pfaffian", e->renormalized_pfaffian)
        << expected_line("boundary finite part", e->boundary_finite_part);
    if (!e->notes.empty()) out << "    notes: " << e->notes << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- command line

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renormalized Gauss-Bonnet verification on collar metrics"};
  app.require_subcommand(1);
  std::string scheme_arg, out_dir, tol_arg;
  app.add_option("--scheme", scheme_arg, "Renormalization scheme: zeta, epsilon or both");
  app.add_option("--out", out_dir, "Output directory for reports and sweeps");
  app.add_option("--tol", tol_arg, "Tolerance override for every check");

  auto* run = app.add_subcommand("run", "Run the checks of a configuration file");
  std::string config_path;
  run->add_option("config", config_path, "Configuration file (JSON)")->required();

  auto* sweep = app.add_subcommand("sweep", "Print an eps-sweep of one integrand as CSV");
  std::string sweep_entry, sweep_integrand, grid_arg;
  sweep->add_option("entry", sweep_entry, "Catalog entry")->required();
  sweep->add_option("integrand", sweep_integrand, "pff, transgression or volume")->required();
  sweep->add_option("--grid", grid_arg, "lo,hi,n (log-spaced)");

  auto* cat = app.add_subcommand("catalog", "List the catalog");
  bool machine = false;
  double eta_filter = 0.0;
  cat->add_flag("--machine", machine, "JSON listing");
  auto* eta_opt = cat->add_option("--eta", eta_filter, "Only entries with this eta");

  auto* props = app.add_subcommand("props", "Run the randomized property suites (seed from RGB_SEED)");
  int cases = 1000;
  props->add_option("--cases", cases, "Cases per suite")->check(CLI::PositiveNumber);

  for (auto* sub : {run, sweep, cat, props}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::optional<SchemeChoice> scheme;
    if (!scheme_arg.empty()) scheme = parse_scheme(scheme_arg);
    std::optional<double> tol;
    if (!tol_arg.empty()) {
      char* end = nullptr;
      const double v = std::strtod(tol_arg.c_str(), &end);
      if (end == tol_arg.c_str() || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw ConfigError("--tol must be a positive number");
      tol = v;
    }

    if (cat->parsed()) {
      out << catalog_listing(machine, eta_opt->count() ? std::optional<double>(eta_filter) : std::nullopt);
      return kExitOk;
    }

    if (props->parsed()) {
      bool ok = true;
      for (const auto& p : run_property_suites(property_seed(), cases)) {
        char line[256];
        std::snprintf(line, sizeof line, "%-5s %-32s cases %-6d max error %-12.4g tol %-8.1g %.2fs\n",
                      p.passed ? "pass" : "fail", p.name.c_str(), p.cases, p.max_error, p.tolerance, p.seconds);
        out << line;
        ok = ok && p.passed;
      }
      return ok ? kExitOk : kExitFail;
    }

    if (sweep->parsed()) {
      const CatalogEntry* entry = nullptr;
      try {
        entry = &catalog_entry(sweep_entry);
      } catch (const std::out_of_range&) {
        throw ConfigError("unknown entry '" + sweep_entry + "'", true);
      }
      const Integrand integrand = parse_integrand(sweep_integrand);
      const GridSpec grid = grid_arg.empty() ? entry->grid : parse_grid(grid_arg);
      const std::string csv = sweep_csv(*entry, integrand, grid);
      if (out_dir.empty()) {
        out << csv;
      } else {
        std::filesystem::create_directories(out_dir);
        const auto path = std::filesystem::path(out_dir) / (sweep_entry + "-" + sweep_integrand + ".csv");
        std::ofstream(path, std::ios::binary) << csv;
        out << path.string() << "\n";
      }
      return kExitOk;
    }

    RunConfig config = parse_config(read_file(config_path));
    if (scheme) config.scheme = *scheme;
    if (tol) config.tolerance = tol;
    if (!out_dir.empty()) config.output_directory = out_dir;
    const RunOutcome outcome = execute(config);
    std::filesystem::create_directories(config.output_directory);
    const auto path = std::filesystem::path(config.output_directory) / config.report;
    std::ofstream file(path, std::ios::binary);
    if (!(file << outcome.report)) {
      err << "error: cannot write report '" << path.string() << "'\n";
      return kExitFail;
    }
    out << outcome.summary << "report: " << path.string() << "\n";
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    if (e.unknown_entry()) err << "available entries:\n" << catalog_listing(false);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace rgb::cli
