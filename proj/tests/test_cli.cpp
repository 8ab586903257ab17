#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace rgb;
using namespace rgb::cli;

namespace {

constexpr double pi = std::numbers::pi;

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rgb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Row {
  double eps, value, err;
};

std::vector<Row> parse_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "eps,value,err_est");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    Row r{};
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &r.eps, &r.value, &r.err) == 3);
    rows.push_back(r);
  }
  return rows;
}

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> k(0, 5);
  RunConfig c;
  c.all_entries = k(rng) == 0;
  if (!c.all_entries) {
    const auto names = catalog_names();
    const int n = k(rng);
    for (int i = 0; i < n; ++i) {
      if (k(rng) < 2) {
        InlineMetric m;
        m.name = "inline-" + std::to_string(i);
        m.eta = 1 + k(rng) % 2;
        m.beta = k(rng) % 2;
        m.warp = {1.0, u(rng) * 1e-3, -u(rng) / 3};
        m.boundary = k(rng) % 2 ? "S1" : "T3";
        m.x_collar = 0.5 + u(rng);
        m.x_end = m.x_collar + u(rng);
        m.copies = 1 + k(rng) % 2;
        m.chi = k(rng) - 2;
        m.truncation = 2 + k(rng);
        m.volume_log = k(rng) % 2;
        m.grid = GridSpec{1e-4 * (1 + u(rng)), 0.1 * (1 + u(rng)), 6 + 2 * k(rng)};
        c.entries.push_back(EntrySpec{m.name, m});
      } else {
        c.entries.push_back(EntrySpec{names[static_cast<std::size_t>(k(rng)) % names.size()], std::nullopt});
      }
    }
  }
  c.scheme = static_cast<SchemeChoice>(k(rng) % 3);
  if (k(rng) % 2) c.grid = GridSpec{std::pow(10.0, -5 + 2 * u(rng)), 0.05 + 0.05 * u(rng), 4 + k(rng)};
  c.quadrature.collar_nodes = 2 + k(rng);
  c.quadrature.max_panel_log_width = 0.1 + u(rng);
  c.quadrature.interior_panels = 1 + k(rng);
  c.quadrature.interior_nodes = 4 + k(rng);
  c.output_directory = k(rng) % 2 ? "." : "out/dir " + std::to_string(k(rng));
  c.report = "report-" + std::to_string(k(rng)) + ".json";
  if (k(rng) % 2) c.tolerance = std::pow(10.0, -12 * u(rng));
  c.properties = k(rng) % 2;
  c.property_cases = 1 + k(rng) * 997;
  return c;
}

}  // namespace

TEST_CASE("configurations round-trip") {
  std::mt19937_64 rng(property_seed());
  for (int i = 0; i < 1000; ++i) {
    const RunConfig c = random_config(rng);
    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("minimal configuration uses the defaults") {
  const RunConfig c = parse_config(R"({"entries": ["hyperbolic-disc"]})");
  CHECK(c == RunConfig{false, {EntrySpec{"hyperbolic-disc", std::nullopt}}});
  CHECK(parse_config(R"({"entries": "all"})").all_entries);
}

TEST_CASE("malformed configurations name the offending field or position") {
  const auto message = [](const std::string& text) -> std::string {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.what();
    }
    FAIL("accepted: " << text);
    return {};
  };
  CHECK(message(R"({"entries": [], "extra": 1})").find("'extra'") != std::string::npos);
  CHECK(message(R"({"entries": [], "grid": {"lo": 1e-3, "hi": 0.1, "n": 5, "m": 1}})").find("'grid.m'") !=
        std::string::npos);
  CHECK(message(R"({"entries": [{"name": "a", "wrap": [1]}]})").find("'entries[0].wrap'") != std::string::npos);
  CHECK(message(R"({"entries": [{"name": "a", "warp": [1, "x"]}]})").find("'entries[0].warp[1]'") !=
        std::string::npos);
  CHECK(message(R"({"entries": [], "quadrature": {"collar_nodes": 1.5}})").find("quadrature.collar_nodes") !=
        std::string::npos);
  CHECK(message(R"({"entries": [], "scheme": "dimreg"})").find("'scheme'") != std::string::npos);
  CHECK(message(R"({"entries": [], "grid": {"lo": 0.1, "hi": 0.01, "n": 5}})").find("'grid'") != std::string::npos);
  CHECK(message(R"({"scheme": "both"})").find("'entries'") != std::string::npos);
  CHECK(message(R"({"entries": 3})").find("'entries'") != std::string::npos);
  CHECK(message("{\n  \"entries\": [,]\n}").find("line 2, column") != std::string::npos);
  CHECK(message("[]").find("<root>") != std::string::npos);
}

TEST_CASE("unknown and invalid entries") {
  RunConfig c;
  c.entries = {EntrySpec{"no-such-entry", std::nullopt}};
  try {
    resolve_entries(c);
    FAIL("accepted an unknown entry");
  } catch (const ConfigError& e) {
    CHECK(e.unknown_entry());
  }
  c.entries = {EntrySpec{"cusp", std::nullopt}, EntrySpec{"cusp", std::nullopt}};
  CHECK_THROWS_AS(resolve_entries(c), ConfigError);
  InlineMetric m;
  m.name = "bad";
  m.warp = {-1.0};
  c.entries = {EntrySpec{m.name, m}};
  CHECK_THROWS_AS(resolve_entries(c), ConfigError);
}

TEST_CASE("exit codes") {
  VerificationReport pass, fail, inconclusive, skipped, exploratory;
  pass.status = Status::Pass;
  fail.status = Status::Fail;
  inconclusive.status = Status::Inconclusive;
  skipped.status = Status::Skipped;
  exploratory.status = Status::Exploratory;
  CHECK(exit_code_for({}) == kExitOk);
  CHECK(exit_code_for({pass, skipped, exploratory}) == kExitOk);
  CHECK(exit_code_for({pass, inconclusive}) == kExitInconclusive);
  CHECK(exit_code_for({inconclusive, fail, pass}) == kExitFail);
  CHECK(exit_code_for({pass}, false) == kExitFail);
}

TEST_CASE("empty entry list is a no-op") {
  const RunOutcome r = execute(parse_config(R"({"entries": []})"));
  CHECK(r.exit_code == kExitOk);
  const auto j = nlohmann::json::parse(r.report);
  CHECK(j["entries"].empty());
  CHECK(j["summary"]["checks"] == 0);
}

TEST_CASE("full catalog run") {
  const RunOutcome r = execute(parse_config(R"({"entries": "all", "scheme": "both"})"));
  CHECK(r.exit_code == kExitOk);
  const auto j = nlohmann::json::parse(r.report);
  std::set<std::string> identities;
  for (const auto& e : j["entries"])
    for (const auto& c : e["checks"]) identities.insert(c["identity"].get<std::string>());
  CHECK(identities.size() >= 8);
  CHECK(j["entries"].size() == catalog().size());
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["inconclusive"] == 0);
}

TEST_CASE("inline metrics run like catalog entries") {
  const RunOutcome r = execute(parse_config(R"({"entries": [{"name": "user-disc", "warp": [1, 0, -0.5, 0, 0.0625],
      "x_end": 2, "chi": 1}]})"));
  CHECK(r.exit_code == kExitOk);
  const auto j = nlohmann::json::parse(r.report);
  const auto& checks = j["entries"][0]["checks"];
  REQUIRE_FALSE(checks.empty());
  CHECK(checks[0]["identity"] == "gauss-bonnet");
  CHECK(checks[0]["status"] == "pass");
  CHECK(std::abs(j["entries"][0]["finite_parts"]["volume_epsilon"]["finite_part"].get<double>() + 2 * pi) < 1e-8);
}

TEST_CASE("failing and inconclusive runs never report success") {
  const RunOutcome tight = execute(parse_config(R"({"entries": ["hyperbolic-funnel"], "tolerance": 1e-300})"));
  CHECK(tight.exit_code == kExitFail);
  const RunOutcome coarse =
      execute(parse_config(R"({"entries": ["hyperbolic-disc"], "grid": {"lo": 0.099, "hi": 0.1, "n": 24}})"));
  CHECK(coarse.exit_code != kExitOk);
}

TEST_CASE("sweeps") {
  SUBCASE("hyperbolic disc volume") {
    const auto rows = parse_csv(sweep_csv(catalog_entry("hyperbolic-disc"), Integrand::Volume, GridSpec{}));
    CHECK(rows.size() == 24);
    for (const auto& r : rows) CHECK(std::abs(r.value - 2 * pi * (1 / r.eps - 1 + r.eps / 4)) <= 1e-8 * (1 / r.eps));
    // Remainder beyond 2 pi (1/eps - 1) is a constant-free O(eps) term.
    const auto small = parse_csv(sweep_csv(catalog_entry("hyperbolic-disc"), Integrand::Volume,
                                           GridSpec{1e-8, 1e-7, 3}));
    for (const auto& r : small) CHECK(std::abs(r.value - 2 * pi * (1 / r.eps - 1)) <= 1e-8 * r.value);
  }
  SUBCASE("b-cylinder transgression") {
    for (const auto& r : parse_csv(sweep_csv(catalog_entry("b-cylinder"), Integrand::Transgression, GridSpec{})))
      CHECK(r.value == 0.0);
  }
  SUBCASE("scattering-plane transgression") {
    for (const auto& r :
         parse_csv(sweep_csv(catalog_entry("scattering-plane"), Integrand::Transgression, GridSpec{})))
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("funnel Pfaffian is minus the area over 2 pi") {
    for (const auto& r : parse_csv(sweep_csv(catalog_entry("hyperbolic-funnel"), Integrand::Pfaffian,
                                             GridSpec{1e-3, 0.1, 5})))
      CHECK(r.value == doctest::Approx(-2 * (1 / r.eps - r.eps / 4)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sweep_csv(catalog_entry("round-sphere-2"), Integrand::Volume, GridSpec{}), ConfigError);
  CHECK_THROWS_AS(parse_integrand("curvature"), ConfigError);
  CHECK(parse_grid("1e-3,0.1,7") == GridSpec{1e-3, 0.1, 7});
  CHECK_THROWS_AS(parse_grid("1e-3,0.1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1e-3,0.1,7,"), ConfigError);
}

TEST_CASE("catalog listing") {
  const std::string text = catalog_listing(false);
  for (const auto& n : catalog_names()) CHECK(text.find(n) != std::string::npos);
  const auto machine = nlohmann::json::parse(catalog_listing(true));
  CHECK(machine.size() >= 9);
  for (const auto& e : machine) {
    CHECK(e.contains("name"));
    CHECK(e.contains("chi"));
    CHECK(e.contains("eta"));
    CHECK(e.contains("beta"));
  }
  const auto scattering = nlohmann::json::parse(catalog_listing(true, 2.0));
  CHECK(scattering.size() == 3);
  for (const auto& e : scattering) CHECK(e["name"].get<std::string>().rfind("scattering-", 0) == 0);
}

TEST_CASE("command line") {
  CHECK(invoke({"catalog", "--eta", "2"}).out.find("scattering-plane") != std::string::npos);
  CHECK(invoke({"catalog", "--eta", "2"}).out.find("hyperbolic-disc") == std::string::npos);
  const auto sweep = invoke({"sweep", "b-cylinder", "transgression", "--grid", "1e-3,1e-1,4"});
  CHECK(sweep.code == kExitOk);
  CHECK(parse_csv(sweep.out).size() == 4);
  CHECK(invoke({"sweep", "no-such", "pff"}).code == kExitUsage);
  const auto unknown = invoke({"sweep", "no-such", "pff"});
  CHECK(unknown.err.find("hyperbolic-disc") != std::string::npos);
  CHECK(invoke({"sweep", "cusp", "curvature"}).code == kExitUsage);
  CHECK(invoke({"--scheme", "dimreg", "catalog"}).code == kExitUsage);
  CHECK(invoke({"--tol", "-1", "catalog"}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
  CHECK(invoke({"run", "/nonexistent/config.json"}).code == kExitUsage);
  CHECK(invoke({"props", "--cases", "50"}).code == kExitOk);
}

TEST_CASE("run command writes the report and maps statuses to exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "rgb-test-cli";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream((dir / name).string()) << text;
    return (dir / name).string();
  };
  const std::string out = (dir / "out").string();

  const auto unknown = invoke({"run", write("unknown.json", R"({"entries": ["hyperbolic-disc", "nope"]})"), "--out", out});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("unknown entry 'nope'") != std::string::npos);
  for (const auto& n : catalog_names()) CHECK(unknown.err.find(n) != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir / "out" / "report.json"));

  const auto malformed = invoke({"run", write("malformed.json", "{\n \"entries\": [],\n \"sceme\": \"both\"\n}"), "--out", out});
  CHECK(malformed.code == kExitUsage);
  CHECK(malformed.err.find("'sceme'") != std::string::npos);

  const std::string disc = write("disc.json", R"({"entries": ["hyperbolic-disc"]})");
  const auto ok = invoke({"run", disc, "--out", out, "--scheme", "epsilon"});
  CHECK(ok.code == kExitOk);
  std::ifstream in(dir / "out" / "report.json");
  const auto report = nlohmann::json::parse(in);
  CHECK(report["config"]["scheme"] == "epsilon");
  CHECK(report["summary"]["exit_code"] == 0);

  CHECK(invoke({"run", disc, "--out", out, "--tol", "1e-300"}).code == kExitFail);
  std::filesystem::remove_all(dir);
}
