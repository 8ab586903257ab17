#include "rgb/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

#include "rgb/curvature.hpp"
#include "rgb/double_form.hpp"
#include "rgb/gb_integrands.hpp"

namespace rgb {

namespace {

struct FitState {
  bool ok = true;
  std::string reason;
};

void require_fit(FitState& st, const std::optional<RenormResult>& r, const char* what, const Tolerances& tol) {
  if (!r) {
    st.ok = false;
    st.reason += std::string(st.reason.empty() ? "" : "; ") + what + " unavailable";
    return;
  }
  if (r->ill_conditioned) {
    st.ok = false;
    st.reason += std::string(st.reason.empty() ? "" : "; ") + what + " fit ill-conditioned";
  } else if (!(r->residual <= tol.fit_residual)) {
    st.ok = false;
    st.reason += std::string(st.reason.empty() ? "" : "; ") + what + " fit residual above target";
  }
}

void add_fit_diagnostics(VerificationReport& rep, const std::optional<RenormResult>& r, const std::string& what) {
  if (!r) return;
  rep.diagnostics.push_back({what + ".condition", r->condition});
  rep.diagnostics.push_back({what + ".residual", r->residual});
  if (r->scheme == Scheme::Zeta) rep.diagnostics.push_back({what + ".split_deviation", r->split_deviation});
  for (const auto& f : r->flags) rep.flags.push_back(what + ":" + f);
}

void decide(VerificationReport& rep, const CatalogEntry& e, const FitState& st) {
  rep.lhs_total = 0.0;
  for (const auto& t : rep.lhs) rep.lhs_total += t.value;
  rep.error = std::abs(rep.lhs_total - rep.rhs);
  if (e.exploratory) {
    rep.status = Status::Exploratory;
    rep.reason = "exploratory entry; values reported without a prediction";
  } else if (!st.ok) {
    rep.status = Status::Inconclusive;
    rep.reason = st.reason;
  } else if (!std::isfinite(rep.error)) {
    rep.status = Status::Inconclusive;
    rep.reason = "non-finite value";
  } else {
    rep.status = rep.error <= rep.tolerance ? Status::Pass : Status::Fail;
  }
}

VerificationReport skipped(const CatalogEntry& e, std::string identity, std::string reason) {
  VerificationReport rep;
  rep.entry = e.name;
  rep.identity = std::move(identity);
  rep.status = Status::Skipped;
  rep.reason = std::move(reason);
  return rep;
}

double fp_of(const std::optional<RenormResult>& r) {
  return r ? r->finite_part : std::numeric_limits<double>::quiet_NaN();
}

bool is_scattering(const CatalogEntry& e) {
  return e.collar && e.collar->eta > 1.0 && e.collar->beta == e.collar->eta - 1.0 && e.collar->alpha_is_one() && !e.collar->degenerate_h0;
}

double form_diff(const DoubleForm& a, const DoubleForm& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i)
    m = std::max(m, std::abs(a.coefficients()[i] - b.coefficients()[i]));
  return m;
}

template <class F>
std::optional<RenormResult> guarded(EntryEvaluation& ev, const std::string& what, F f) {
  try {
    return f();
  } catch (const std::exception& ex) {
    ev.errors.push_back(what + ": " + ex.what());
    return std::nullopt;
  }
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Skipped: return "skipped";
    case Status::Exploratory: return "exploratory";
  }
  return "unknown";
}

const char* scheme_choice_name(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::Zeta: return "zeta";
    case SchemeChoice::Epsilon: return "epsilon";
    case SchemeChoice::Both: return "both";
  }
  return "unknown";
}

Tolerances effective_tolerances(const CatalogEntry& e, const EvaluationOptions& opts) {
  Tolerances t = e.tol;
  if (opts.tolerance) {
    const double v = *opts.tolerance;
    t.gauss_bonnet = t.boundary_zero = t.bulk = t.pairwise = t.even = t.cross_validation = t.scheme =
        t.volume_relative = t.closed = v;
  }
  return t;
}

EntryEvaluation evaluate_entry(const CatalogEntry& e, const EvaluationOptions& opts) {
  EntryEvaluation ev;
  ev.entry = e.name;
  if (e.closed) {
    try {
      ev.closed_integral = integrate_bulk(e.domain, pfaffian_bulk_density(opts.sweep.fd), 0.0, e.domain.x_end, 8, 16,
                                          opts.sweep.fd);
    } catch (const std::exception& ex) {
      ev.errors.push_back(std::string("closed integral: ") + ex.what());
    }
    return ev;
  }
  const GridSpec grid = opts.grid ? *opts.grid : e.grid;
  ev.grid = grid.points();
  const bool want_zeta = opts.scheme != SchemeChoice::Epsilon;
  const bool want_eps = opts.scheme != SchemeChoice::Zeta;
  const double delta = default_split_point(ev.grid);

  SweepOptions so = opts.sweep;
  so.side = Side::Above;
  if (want_zeta) {
    so.extra_points.push_back(delta);
    so.extra_points.push_back(0.5 * delta);
  }

  auto bulk = [&](const BulkDensity& density, const IndexSet& set, const std::string& what,
                  std::optional<RenormResult>& eps_out, std::optional<RenormResult>& zeta_out) {
    BulkSweep sweep;
    try {
      sweep = sweep_bulk(e.domain, density, ev.grid, so);
    } catch (const std::exception& ex) {
      ev.errors.push_back(what + " sweep: " + ex.what());
      return;
    }
    if (want_eps) eps_out = guarded(ev, what + " epsilon", [&] { return renormalize_epsilon(sweep, set); });
    if (want_zeta) zeta_out = guarded(ev, what + " zeta", [&] { return renormalize_zeta(sweep, set, delta); });
  };
  bulk(volume_density(), e.volume_set, "volume", ev.volume_eps, ev.volume_zeta);
  bulk(pfaffian_bulk_density(so.fd), e.pfaffian_set, "pfaffian", ev.pfaffian_eps, ev.pfaffian_zeta);
  ev.boundary = guarded(ev, "boundary", [&] {
    return renormalized_boundary_integral(e.domain, transgression_boundary_density(), e.boundary_set, ev.grid, so);
  });
  return ev;
}

VerificationReport soft_gb(const CatalogEntry& e, const EntryEvaluation& ev, const EvaluationOptions& opts) {
  const Tolerances tol = effective_tolerances(e, opts);
  VerificationReport rep;
  rep.entry = e.name;
  rep.identity = "gauss-bonnet";
  rep.rhs = e.chi;
  FitState st;
  if (e.closed) {
    rep.lhs.push_back({"integral_pfaffian", ev.closed_integral.value_or(std::numeric_limits<double>::quiet_NaN())});
    rep.tolerance = tol.closed;
    if (!ev.closed_integral) {
      st.ok = false;
      st.reason = "closed integral unavailable";
    }
    decide(rep, e, st);
    return rep;
  }
  rep.tolerance = tol.gauss_bonnet;
  rep.lhs.push_back({"renormalized_pfaffian", fp_of(ev.pfaffian())});
  rep.lhs.push_back({"boundary_finite_part", fp_of(ev.boundary)});
  require_fit(st, ev.pfaffian(), "pfaffian", tol);
  require_fit(st, ev.boundary, "boundary", tol);
  add_fit_diagnostics(rep, ev.pfaffian(), "pfaffian");
  add_fit_diagnostics(rep, ev.boundary, "boundary");
  decide(rep, e, st);
  return rep;
}

std::vector<VerificationReport> check_beta_zero(const CatalogEntry& e, const EntryEvaluation& ev,
                                                const EvaluationOptions& opts) {
  if (!e.collar || e.collar->beta != 0.0) return {skipped(e, "beta-zero", "requires beta = 0")};
  const Tolerances tol = effective_tolerances(e, opts);
  std::vector<VerificationReport> out;
  {
    VerificationReport rep;
    rep.entry = e.name;
    rep.identity = "beta-zero-boundary";
    rep.lhs.push_back({"boundary_finite_part", fp_of(ev.boundary)});
    rep.rhs = 0.0;
    rep.tolerance = tol.boundary_zero;
    FitState st;
    require_fit(st, ev.boundary, "boundary", tol);
    add_fit_diagnostics(rep, ev.boundary, "boundary");
    decide(rep, e, st);
    out.push_back(rep);
  }
  {
    VerificationReport rep;
    rep.entry = e.name;
    rep.identity = "beta-zero-bulk";
    rep.lhs.push_back({"renormalized_pfaffian", fp_of(ev.pfaffian())});
    rep.rhs = e.chi;
    rep.tolerance = tol.bulk;
    FitState st;
    require_fit(st, ev.pfaffian(), "pfaffian", tol);
    add_fit_diagnostics(rep, ev.pfaffian(), "pfaffian");
    decide(rep, e, st);
    out.push_back(rep);
  }
  return out;
}

std::vector<VerificationReport> check_scattering(const CatalogEntry& e, const EntryEvaluation& ev,
                                                 const EvaluationOptions& opts) {
  if (!is_scattering(e)) return {skipped(e, "scattering", "requires eta > 1, beta = eta - 1, alpha = 1, nondegenerate h_0")};
  const Tolerances tol = effective_tolerances(e, opts);
  std::vector<VerificationReport> out;
  {
    VerificationReport rep;
    rep.entry = e.name;
    rep.identity = "scattering-boundary-vs-bulk";
    rep.lhs.push_back({"boundary_finite_part", fp_of(ev.boundary)});
    rep.rhs = e.chi - fp_of(ev.pfaffian());
    rep.tolerance = tol.pairwise;
    rep.diagnostics.push_back({"euler_characteristic", static_cast<double>(e.chi)});
    rep.diagnostics.push_back({"renormalized_pfaffian", fp_of(ev.pfaffian())});
    FitState st;
    require_fit(st, ev.boundary, "boundary", tol);
    require_fit(st, ev.pfaffian(), "pfaffian", tol);
    add_fit_diagnostics(rep, ev.boundary, "boundary");
    add_fit_diagnostics(rep, ev.pfaffian(), "pfaffian");
    decide(rep, e, st);
    out.push_back(rep);
  }
  {
    VerificationReport rep;
    rep.entry = e.name;
    rep.identity = "scattering-tube-polynomial";
    FitState st;
    double limit = std::numeric_limits<double>::quiet_NaN();
    double displayed = std::numeric_limits<double>::quiet_NaN();
    try {
      limit = e.domain.copies * boundary_tube_integral(*e.collar, TubeFormula::Limit);
      displayed = e.domain.copies * boundary_tube_integral(*e.collar, TubeFormula::Displayed);
    } catch (const std::exception& ex) {
      st.ok = false;
      st.reason = std::string("tube polynomial: ") + ex.what();
    }
    rep.lhs.push_back({"tube_polynomial", limit});
    rep.rhs = fp_of(ev.boundary);
    rep.tolerance = tol.pairwise;
    rep.diagnostics.push_back({"tube_invariant_displayed", displayed});
    const double dev = std::abs(displayed - rep.rhs);
    rep.diagnostics.push_back({"tube_invariant_displayed_deviation", dev});
    if (!(dev <= tol.pairwise)) rep.flags.emplace_back("displayed-tube-formula-mismatch");
    require_fit(st, ev.boundary, "boundary", tol);
    add_fit_diagnostics(rep, ev.boundary, "boundary");
    decide(rep, e, st);
    out.push_back(rep);
  }
  return out;
}

VerificationReport check_even_cc(const CatalogEntry& e, const EntryEvaluation& ev, const EvaluationOptions& opts) {
  if (!e.collar || !e.collar->conformally_compact())
    return skipped(e, "even-conformally-compact", "requires eta = beta = 1");
  const int ell = (e.dim + 1) / 2;
  const EvennessResult even = evenness_check(*e.collar, ell);
  if (even.status != Evenness::Even) {
    auto rep = skipped(e, "even-conformally-compact",
                       even.status == Evenness::NotEven
                           ? "metric not even: odd term of order " + std::to_string(even.offending_order)
                           : "evenness undetermined at the available series order");
    rep.diagnostics.push_back({"offending_order", static_cast<double>(even.offending_order)});
    rep.diagnostics.push_back({"offending_magnitude", even.offending_magnitude});
    return rep;
  }
  const Tolerances tol = effective_tolerances(e, opts);
  VerificationReport rep;
  rep.entry = e.name;
  rep.identity = "even-conformally-compact";
  rep.lhs.push_back({"renormalized_pfaffian", fp_of(ev.pfaffian())});
  rep.rhs = e.chi;
  rep.tolerance = tol.even;
  FitState st;
  require_fit(st, ev.pfaffian(), "pfaffian", tol);
  add_fit_diagnostics(rep, ev.pfaffian(), "pfaffian");
  decide(rep, e, st);
  return rep;
}

VerificationReport cross_validate_curvature(const CatalogEntry& e, const EvaluationOptions& opts) {
  if (!e.collar) return skipped(e, "curvature-cross-validation", "closed manifold");
  if (e.collar->degenerate_h0) return skipped(e, "curvature-cross-validation", "degenerate h_0");
  const Tolerances tol = effective_tolerances(e, opts);
  const CollarMetric& cm = *e.collar;
  const ChartMetric fd_chart = collar_to_chart(cm).without_exact_derivatives();
  const std::size_t stride = std::max<std::size_t>(1, cm.boundary.size() / 8);
  double sff_dev = 0.0, curv_dev = 0.0;
  for (double eps : log_grid(1e-3, 1e-1, 6)) {
    for (std::size_t n = 0; n < cm.boundary.size(); n += stride) {
      const auto y = cm.boundary.node(n);
      const LevelSetSample s = sample_level_set(fd_chart, eps, y, Side::Above, opts.sweep.fd);
      const DoubleForm Sm = sff_model(cm, eps, y);
      const DoubleForm Rm = curvature_model(cm, eps, y);
      sff_dev = std::max(sff_dev, form_diff(s.S, Sm) / std::max(1.0, Sm.max_abs()));
      curv_dev = std::max(curv_dev, form_diff(s.R_tangent, Rm) / std::max(1.0, Rm.max_abs()));
    }
  }
  VerificationReport rep;
  rep.entry = e.name;
  rep.identity = "curvature-cross-validation";
  rep.lhs.push_back({"max_relative_deviation", std::max(sff_dev, curv_dev)});
  rep.rhs = 0.0;
  rep.tolerance = tol.cross_validation;
  rep.diagnostics.push_back({"second_fundamental_form", sff_dev});
  rep.diagnostics.push_back({"tangential_curvature", curv_dev});
  decide(rep, e, FitState{});
  return rep;
}

std::vector<VerificationReport> check_scheme_agreement(const CatalogEntry& e, const EntryEvaluation& ev,
                                                       const EvaluationOptions& opts) {
  if (e.closed) return {skipped(e, "scheme-agreement", "closed manifold")};
  const Tolerances tol = effective_tolerances(e, opts);
  std::vector<VerificationReport> out;
  auto one = [&](const std::string& what, const std::optional<RenormResult>& eps,
                 const std::optional<RenormResult>& zeta) {
    const std::string id = "scheme-agreement-" + what;
    if (!eps || !zeta) {
      out.push_back(skipped(e, id, "requires both schemes"));
      return;
    }
    VerificationReport rep;
    rep.entry = e.name;
    rep.identity = id;
    rep.lhs.push_back({"zeta", zeta->finite_part});
    rep.rhs = eps->finite_part;
    rep.tolerance = tol.scheme * (1.0 + std::abs(eps->finite_part));
    add_fit_diagnostics(rep, eps, "epsilon");
    add_fit_diagnostics(rep, zeta, "zeta");
    FitState st;
    require_fit(st, eps, "epsilon", tol);
    require_fit(st, zeta, "zeta", tol);
    decide(rep, e, st);
    if (eps->log_at_zero && rep.status != Status::Exploratory) {
      rep.status = Status::Skipped;
      rep.reason = "log term at eps^0: the schemes may differ; difference " + std::to_string(rep.error);
    }
    out.push_back(rep);
  };
  one("volume", ev.volume_eps, ev.volume_zeta);
  one("pfaffian", ev.pfaffian_eps, ev.pfaffian_zeta);
  return out;
}

VerificationReport check_renormalized_volume(const CatalogEntry& e, const EntryEvaluation& ev,
                                             const EvaluationOptions& opts) {
  if (!e.renormalized_volume) return skipped(e, "renormalized-volume", "no closed form declared");
  const Tolerances tol = effective_tolerances(e, opts);
  VerificationReport rep;
  rep.entry = e.name;
  rep.identity = "renormalized-volume";
  rep.lhs.push_back({"renormalized_volume", fp_of(ev.volume())});
  rep.rhs = e.renormalized_volume->value;
  rep.tolerance = tol.volume_relative * std::max(1.0, std::abs(rep.rhs));
  FitState st;
  require_fit(st, ev.volume(), "volume", tol);
  add_fit_diagnostics(rep, ev.volume(), "volume");
  decide(rep, e, st);
  return rep;
}

std::vector<VerificationReport> verify_entry(const CatalogEntry& e, const EvaluationOptions& opts) {
  return verify_entry(e, evaluate_entry(e, opts), opts);
}

std::vector<VerificationReport> verify_entry(const CatalogEntry& e, const EntryEvaluation& ev,
                                             const EvaluationOptions& opts) {
  std::vector<VerificationReport> out;
  out.push_back(soft_gb(e, ev, opts));
  if (e.closed) return out;
  if (e.collar->beta == 0.0)
    for (auto& r : check_beta_zero(e, ev, opts)) out.push_back(std::move(r));
  if (is_scattering(e))
    for (auto& r : check_scattering(e, ev, opts)) out.push_back(std::move(r));
  if (e.collar->conformally_compact()) out.push_back(check_even_cc(e, ev, opts));
  out.push_back(cross_validate_curvature(e, opts));
  if (opts.scheme == SchemeChoice::Both)
    for (auto& r : check_scheme_agreement(e, ev, opts)) out.push_back(std::move(r));
  if (e.renormalized_volume) out.push_back(check_renormalized_volume(e, ev, opts));
  for (auto& r : out)
    for (const auto& err : ev.errors) r.flags.push_back("error:" + err);
  return out;
}

// ---------------------------------------------------------------- property suites

namespace {

using Clock = std::chrono::steady_clock;

DoubleForm random_form(std::mt19937_64& rng, int p, int q, int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DoubleForm f(p, q, d);
  for (double& c : f.coefficients()) c = u(rng);
  return f;
}

std::vector<double> random_point(std::mt19937_64& rng, const CatalogEntry& e) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BoundaryDescriptor& level = e.domain.level;
  std::vector<double> p(static_cast<std::size_t>(e.dim));
  if (e.closed)
    p[0] = 0.1 + (e.domain.x_end - 0.2) * u(rng);
  else
    p[0] = std::exp(std::log(1e-3) + (std::log(e.domain.x_collar) - std::log(1e-3)) * u(rng));
  const auto y = level.node(static_cast<std::size_t>(u(rng) * static_cast<double>(level.size())) % level.size());
  for (std::size_t i = 0; i < y.size(); ++i) p[i + 1] = y[i] + 0.02 * (u(rng) - 0.5);
  return p;
}

double riemann_symmetry_error(const DoubleForm& R) {
  const int m = R.dim();
  double err = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          const double v = R({a, b}, {c, d});
          err = std::max(err, std::abs(v + R({b, a}, {c, d})));
          err = std::max(err, std::abs(v + R({a, b}, {d, c})));
          err = std::max(err, std::abs(v - R({c, d}, {a, b})));
          err = std::max(err, std::abs(v + R({a, c}, {d, b}) + R({a, d}, {b, c})));
        }
  return err;
}

template <class F>
PropertyResult timed(const std::string& name, double tolerance, F body) {
  const auto t0 = Clock::now();
  PropertyResult r;
  r.name = name;
  r.tolerance = tolerance;
  body(r);
  r.passed = r.cases > 0 && r.max_error <= tolerance;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<PropertyResult> run_property_suites(std::uint64_t seed, int cases) {
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(seed);

  out.push_back(timed("riemann-symmetry", 1e-8, [&](PropertyResult& r) {
    for (const auto& e : catalog()) {
      for (int i = 0; i < cases; ++i) {
        const auto p = random_point(rng, e);
        const DoubleForm R = riemann(e.domain.chart, p);
        // Flat charts carry rounding noise near 1e-13; below the floor the bound is absolute.
        r.max_error = std::max(r.max_error, riemann_symmetry_error(R) / std::max(R.max_abs(), 1e-3));
        ++r.cases;
      }
    }
  }));

  out.push_back(timed("double-form-algebra", 1e-12, [&](PropertyResult& r) {
    std::uniform_int_distribution<int> dimd(1, 6);
    for (int i = 0; i < cases; ++i) {
      const int d = dimd(rng);
      auto deg = [&](int room) { return std::uniform_int_distribution<int>(0, std::max(0, room))(rng); };
      const int p1 = deg(d), q1 = deg(d);
      const int p2 = deg(d - p1), q2 = deg(d - q1);
      const int p3 = deg(d - p1 - p2), q3 = deg(d - q1 - q2);
      const DoubleForm a = random_form(rng, p1, q1, d);
      const DoubleForm b = random_form(rng, p2, q2, d);
      const DoubleForm c = random_form(rng, p3, q3, d);
      const DoubleForm ab = df_product(a, b);
      const DoubleForm ba = df_product(b, a);
      const double sign = ((p1 * p2 + q1 * q2) % 2) ? -1.0 : 1.0;
      const double scale = std::max(1.0, ab.max_abs());
      r.max_error = std::max(r.max_error, form_diff(ab, sign * ba) / scale);
      const DoubleForm left = df_product(ab, c);
      const DoubleForm right = df_product(a, df_product(b, c));
      r.max_error = std::max(r.max_error, form_diff(left, right) / std::max(1.0, left.max_abs()));
      ++r.cases;
    }
  }));

  out.push_back(timed("permutation-sum-vs-power", 1e-10, [&](PropertyResult& r) {
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < cases; ++i) {
      std::vector<DoubleForm> f;
      switch (pick(rng)) {
        case 0: f = {random_form(rng, 2, 2, 2)}; break;
        case 1: {
          const DoubleForm R = random_form(rng, 2, 2, 4);
          f = {R, R};
          break;
        }
        case 2: f = {random_form(rng, 2, 2, 4), random_form(rng, 1, 1, 4), random_form(rng, 1, 1, 4)}; break;
        default: f = {random_form(rng, 1, 1, 3), random_form(rng, 1, 1, 3), random_form(rng, 1, 1, 3)}; break;
      }
      const DoubleForm prod = df_product_all(f);
      std::vector<int> full(static_cast<std::size_t>(prod.dim()));
      for (int k = 0; k < prod.dim(); ++k) full[static_cast<std::size_t>(k)] = k;
      const double power = prod(full, full);
      const double perm = permutation_contraction(f);
      r.max_error = std::max(r.max_error, std::abs(perm - contraction_ratio(f) * power) / std::max(1.0, std::abs(perm)));
      ++r.cases;
    }
  }));

  out.push_back(timed("second-fundamental-form-model", 1e-4, [&](PropertyResult& r) {
    std::vector<const CatalogEntry*> entries;
    for (const auto& e : catalog())
      if (e.collar && !e.collar->degenerate_h0) entries.push_back(&e);
    const int per = (cases + static_cast<int>(entries.size()) - 1) / static_cast<int>(entries.size());
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const CatalogEntry* e : entries) {
      for (int i = 0; i < per; ++i) {
        const double eps = std::exp(std::log(1e-3) + (std::log(1e-1) - std::log(1e-3)) * u(rng));
        auto p = random_point(rng, *e);
        const std::span<const double> y(p.data() + 1, p.size() - 1);
        const DoubleForm model = sff_model(*e->collar, eps, y);
        const DoubleForm chart = sff_level_set(e->domain.chart, eps, y);
        r.max_error = std::max(r.max_error, form_diff(model, chart) / std::max(1e-8, model.max_abs()));
        ++r.cases;
      }
    }
  }));
  return out;
}

std::uint64_t property_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("RGB_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
    throw std::invalid_argument("RGB_SEED must be a non-negative integer");
  }
  return fallback;
}

}  // namespace rgb
