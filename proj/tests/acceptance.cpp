#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "rgb/gb_integrands.hpp"
#include "rgb/verify.hpp"

using namespace rgb;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double lhs_of(const std::vector<VerificationReport>& reps, const std::string& id) {
  for (const auto& r : reps)
    if (r.identity == id) return r.lhs_total;
  return std::nan("");
}

const VerificationReport* find(const std::vector<VerificationReport>& reps, const std::string& id) {
  for (const auto& r : reps)
    if (r.identity == id) return &r;
  return nullptr;
}

double diagnostic(const VerificationReport& r, const std::string& name) {
  for (const auto& t : r.diagnostics)
    if (t.name == name) return t.value;
  return std::nan("");
}

ChartMetric flat_polar() {
  return make_chart(2, [](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    std::array<T, kMaxDim * kMaxDim> c{};
    for (auto& v : c) v = T(0.0);
    c[0] = 1.0;
    c[3] = p[0] * p[0];
    return c;
  });
}

// Integral of Pff over {x <= rho} plus the transgression over {x = rho} with the outward normal.
double boundary_gauss_bonnet(const Domain& d, double rho) {
  const double bulk = integrate_bulk(d, pfaffian_bulk_density(), 0.0, rho, 8, 16);
  SweepOptions opts;
  opts.side = Side::Below;
  const std::vector<double> at{rho};
  return bulk + sweep_boundary(d, transgression_boundary_density(), at, opts)[0].value;
}

Outcome sphere_calibration() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* name : {"round-sphere-2", "round-sphere-4"}) {
    const auto& e = catalog_entry(name);
    const double v = integrate_bulk(e.domain, pfaffian_bulk_density(), 0.0, e.domain.x_end, 8, 16);
    const double tol = e.dim == 2 ? 1e-9 : 1e-6;
    o.require(std::abs(v - 2.0) <= tol, std::string(name) + " err " + fmt("%.2e", std::abs(v - 2.0)));
  }
  const double t = seconds_since(t0);
  o.require(t < 5.0, fmt("%.2fs", t));
  return o;
}

Outcome classical_boundary() {
  Outcome o;
  const Domain disc{flat_polar(), BoundaryDescriptor::circle(), 1.0, 1.0, 1};
  const double d = boundary_gauss_bonnet(disc, 1.0);
  o.require(std::abs(d - 1.0) <= 1e-8, "disc err " + fmt("%.2e", std::abs(d - 1.0)));
  const Domain& s2 = catalog_entry("round-sphere-2").domain;
  for (double rho : {0.4, 1.2, 2.0}) {
    const double c = boundary_gauss_bonnet(s2, rho);
    o.require(std::abs(c - 1.0) <= 1e-6, "cap " + fmt("%.1f", rho) + " err " + fmt("%.2e", std::abs(c - 1.0)));
  }
  return o;
}

Outcome renormalized_two_dimensional() {
  Outcome o;
  for (const char* name : {"hyperbolic-disc", "hyperbolic-funnel"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& e = catalog_entry(name);
    EvaluationOptions opts;
    opts.grid = GridSpec{1e-4, 1e-1, 24};
    const auto r = soft_gb(e, evaluate_entry(e, opts), opts);
    const double expected = name == std::string("hyperbolic-disc") ? 1.0 : 0.0;
    const double err = std::abs(r.lhs_total - expected);
    const double t = seconds_since(t0);
    o.require(err <= 1e-4 && r.status == Status::Pass && t < 30.0,
              std::string(name) + " err " + fmt("%.2e", err) + " in " + fmt("%.2fs", t));
  }
  return o;
}

Outcome beta_zero() {
  Outcome o;
  for (const char* name : {"b-cylinder", "cusp"}) {
    const auto& e = catalog_entry(name);
    const auto reps = check_beta_zero(e, evaluate_entry(e));
    const double fp = reps.at(0).lhs_total, rpff = reps.at(1).lhs_total;
    o.require(std::abs(fp) <= 1e-8 && std::abs(rpff) <= 1e-6,
              std::string(name) + " FP " + fmt("%.2e", fp) + " RPff " + fmt("%.2e", rpff));
  }
  return o;
}

Outcome scattering_plane() {
  Outcome o;
  const auto& e = catalog_entry("scattering-plane");
  const auto reps = check_scattering(e, evaluate_entry(e));
  const double fp = reps.at(0).lhs_total, defect = reps.at(0).rhs, tube = reps.at(1).lhs_total;
  const double worst =
      std::max({std::abs(fp - tube), std::abs(fp - defect), std::abs(tube - defect), std::abs(fp - 1.0)});
  o.require(worst <= 1e-6, "FP " + fmt("%.12f", fp) + ", P " + fmt("%.12f", tube) + ", chi - RPff " +
                               fmt("%.12f", defect) + ", max pairwise " + fmt("%.2e", worst));
  return o;
}

Outcome scattering_r4() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto& e = catalog_entry("scattering-r4");
  const auto reps = check_scattering(e, evaluate_entry(e));
  const double fp = reps.at(0).lhs_total;
  const double displayed = diagnostic(reps.at(1), "tube_invariant_displayed");
  o.require(std::abs(fp - 1.0) <= 1e-3, "FP " + fmt("%.15f", fp));
  o.require(std::abs(displayed - fp) <= 1e-3, "closed tube formula " + fmt("%.15f", displayed));
  const double t = seconds_since(t0);
  o.require(t < 120.0, fmt("%.2fs", t));
  return o;
}

Outcome even_four_dimensional() {
  Outcome o;
  const auto& e = catalog_entry("hyperbolic-ball-4");
  const auto ev = evaluate_entry(e);
  const double rpff = check_even_cc(e, ev).lhs_total;
  const double vol = ev.volume()->finite_part, target = 4 * pi * pi / 3;
  o.require(std::abs(rpff - 1.0) <= 1e-3, "RPff " + fmt("%.10f", rpff));
  o.require(std::abs(vol - target) <= 1e-4 * target, "RVol rel err " + fmt("%.2e", std::abs(vol / target - 1)));
  return o;
}

Outcome scheme_agreement() {
  Outcome o;
  int compared = 0, excluded = 0;
  double worst = 0.0;
  const auto unflagged = [](const std::optional<RenormResult>& r) {
    return r && r->flags.empty() && !r->ill_conditioned && !r->log_at_zero && !r->pole_at_zero;
  };
  for (const auto& e : catalog()) {
    if (e.closed) continue;
    const auto ev = evaluate_entry(e);
    const std::pair<const std::optional<RenormResult>*, const std::optional<RenormResult>*> pairs[] = {
        {&ev.volume_eps, &ev.volume_zeta}, {&ev.pfaffian_eps, &ev.pfaffian_zeta}};
    for (const auto& [eps, zeta] : pairs) {
      if (!unflagged(*eps) || !unflagged(*zeta)) {
        ++excluded;
        continue;
      }
      ++compared;
      const double fp = (*eps)->finite_part;
      const double ratio = std::abs((*zeta)->finite_part - fp) / (1e-6 * (1 + std::abs(fp)));
      worst = std::max(worst, ratio);
      if (ratio > 1.0) o.require(false, e.name + " " + fmt("%.2e", std::abs((*zeta)->finite_part - fp)));
    }
  }
  o.require(compared > 0, std::to_string(compared) + " integrals compared, " + std::to_string(excluded) +
                              " flagged, worst " + fmt("%.3f", worst) + " of tolerance");
  return o;
}

Outcome property_suites() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_property_suites(property_seed(), 1000);
  for (const auto& p : results)
    o.require(p.passed && p.cases >= 1000,
              p.name + " " + std::to_string(p.cases) + " cases max " + fmt("%.1e", p.max_error));
  const double t = seconds_since(t0);
  o.require(results.size() == 4 && t < 120.0, fmt("%.2fs", t));
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "rgb-acceptance";
  std::filesystem::create_directories(dir);
  const auto config = dir / "catalog.json";
  std::ofstream(config) << R"({"entries": "all", "scheme": "both", "properties": {"enabled": true}})";
  std::string reports[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const std::string out = dir.string(), cfg = config.string();
    const char* argv[] = {"rgb", "run", cfg.c_str(), "--out", out.c_str()};
    std::ostringstream sink, err;
    codes[i] = cli::run_cli(5, argv, sink, err);
    std::ifstream in(dir / "report.json", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    reports[i] = ss.str();
    std::filesystem::remove(dir / "report.json");
  }
  o.require(!reports[0].empty() && reports[0] == reports[1],
            "two runs, " + std::to_string(reports[0].size()) + " bytes, identical: " +
                (reports[0] == reports[1] ? "yes" : "no"));
  o.require(codes[0] == 0 && codes[1] == 0, "exit codes " + std::to_string(codes[0]) + ", " + std::to_string(codes[1]));
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"sphere calibration", sphere_calibration},
      {"classical boundary Gauss-Bonnet", classical_boundary},
      {"renormalized Gauss-Bonnet in two dimensions", renormalized_two_dimensional},
      {"beta = 0 vanishing", beta_zero},
      {"scattering plane three-way agreement", scattering_plane},
      {"scattering R^4", scattering_r4},
      {"even conformally compact ball in four dimensions", even_four_dimensional},
      {"scheme agreement", scheme_agreement},
      {"property suites", property_suites},
      {"determinism", determinism},
  };
  int failures = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
