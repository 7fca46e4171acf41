#include <CLI11.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "casimir/config.hpp"

using namespace casimir;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double pi = std::numbers::pi;

enum Exit { kOk = 0, kFail = 1, kValidation = 2, kDomain = 3 };

struct Overrides {
  std::string config, out = ".";
  int threads = 0, grid_alpha = 0, grid_p = 0, nmax = 0;
  bool allow_continuation = false;
  std::string param;
  double from = 0, to = 0;
  int steps = 0;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const fs::path& path, const CurveOutput& out) {
  std::ofstream f(path);
  for (size_t k = 0; k < out.columns.size(); ++k)
    f << (k ? "," : "") << csv_field(out.columns[k] + " [" + out.units[k] + "]");
  f << "\n";
  for (const auto& r : out.rows) {
    for (size_t k = 0; k < r.size(); ++k) f << (k ? "," : "") << num(r[k]);
    f << "\n";
  }
  if (out.error) f << csv_field("#error: " + out.error_message) << "\n";
}

int cmd_run(Overrides o) {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig c;
  std::string raw;
  try {
    c = load_config(o.config, &raw, o.allow_continuation);
    if (const char* e = std::getenv("CASIMIR_THREADS")) c.threads = std::max(1, std::atoi(e));
    if (const char* e = std::getenv("CASIMIR_OUT")) o.out = e;
    if (o.threads) c.threads = o.threads;
    if (o.grid_alpha) c.grid_alpha = o.grid_alpha;
    if (o.grid_p) c.grid_p = o.grid_p;
    if (o.nmax) c.n_max = o.nmax;
    if (o.allow_continuation) c.allow_continuation = true;
    if (!o.param.empty()) c.sweep = {o.param, o.from, o.to, o.steps};
    c.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }

  CurveOutput out;
  ScenarioBuild b;
  try {
    b = build(c);
    out = run(c);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }

  fs::create_directories(o.out);
  const fs::path csv = fs::path(o.out) / (c.scenario_id + ".csv");
  const fs::path man = fs::path(o.out) / (c.scenario_id + ".manifest.json");
  write_csv(csv, out);

  nlohmann::json diagrams = nlohmann::json::array();
  for (const auto& d : b.diagrams)
    diagrams.push_back({{"diagram", d.str()},
                        {"S", d.symmetry_factor.str()},
                        {"direction_symmetric", d.direction_symmetric},
                        {"mirror", mirror(d).str()},
                        {"channels", b.scene.dim == Dimension::TwoD || c.scenario_id == "parallel_plates"
                                         ? std::string()
                                         : vertex_channels(b.scene, d)}});
  const auto g = scenario_grid(c, b.scene);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::json m = {{"tool", "casimir"},
                      {"version", kVersion},
                      {"config_checksum", checksum(raw)},
                      {"config", config_to_json(c)},
                      {"data_file", csv.filename().string()},
                      {"grid",
                       {{"n_alpha", g->n_alpha()},
                        {"n_p", g->n_p()},
                        {"map_scale", g->map_scale},
                        {"p_scale", g->p_scale},
                        {"p_scale_policy", "1/shortest object separation (per sweep point)"}}},
                      {"wall_time_s", wall},
                      {"diagrams", diagrams},
                      {"notes", out.notes},
                      {"warnings", out.warnings},
                      {"error", out.error ? out.error_message : ""}};
  std::ofstream(man) << m.dump(2) << "\n";
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << csv.string() << " (" << out.rows.size() << " rows) and " << man.string() << "\n";
  if (out.error) {
    std::cerr << "error: " << out.error_message << "\n";
    return kDomain;
  }
  return kOk;
}

int cmd_diagrams(int M, int nmax) {
  if (M < 2) {
    std::cerr << "error: --objects must be >= 2\n";
    return kValidation;
  }
  for (const auto& d : enumerate(M, nmax)) {
    std::cout << d.str() << " S=" << d.symmetry_factor.str() << " " << (d.direction_symmetric ? "sym" : "arrow");
    if (!d.direction_symmetric) std::cout << " mirror=" << mirror(d).str();
    std::cout << "\n";
  }
  return kOk;
}

struct Check {
  std::string name;
  double measured, tolerance;
  bool pass() const { return std::isfinite(measured) && measured <= tolerance; }
};

int cmd_verify() {
  std::vector<Check> checks;
  {
    std::mt19937_64 rng(7);
    double worst = 0, worst_tail = 0;
    for (int i = 0; i < 20; ++i) {
      auto sys = random_block_system(3, 3, 0.5, rng);
      auto r = lndet_oracle(sys, 6);
      worst = std::max(worst, std::abs(r.series - r.truncated_exact) / std::abs(r.truncated_exact));
      worst_tail = std::max(worst_tail, std::abs(r.series - r.exact) / r.tail_bound);
    }
    checks.push_back({"ln-det: diagram sum vs tr K^n/n (rel)", worst, 1e-8});
    checks.push_back({"ln-det: |series - exact| / tail bound", worst_tail, 1.0});
  }
  {
    std::cout << "D=3 per-order ratios E_n/E_1 vs 1/n^4:\n";
    double worst = 0, sum = 0;
    for (int n = 1; n <= 6; ++n) {
      const double r = parallel_plate_per_order(3, 1, n) / parallel_plate_per_order(3, 1, 1);
      std::printf("  n=%d  %.17g  %.17g\n", n, r, 1.0 / std::pow(n, 4));
      worst = std::max(worst, std::abs(r * std::pow(n, 4) - 1));
    }
    for (int n = 1; n <= 200000; ++n) sum += parallel_plate_per_order(3, 1, n);
    checks.push_back({"parallel plates: 1/n^4 ratios", worst, 1e-14});
    checks.push_back({"parallel plates: zeta resummation (n<=2e5, rel)",
                      std::abs(sum / parallel_plate_energy(3, 1) - 1), 1e-12});
    ScenarioConfig c;
    c.scenario_id = "parallel_plates";
    c.dim = 2;
    c.d = 1;
    const auto g = scenario_grid(c, build(c).scene);
    checks.push_back({"parallel plates: D=2 quadrature vs -zeta(3)/(16 pi d^2)",
                      std::abs(parallel_plate_quadrature(2, 1, BoundaryCondition::Dirichlet, *g) /
                                   (-boost::math::zeta(3.0) / (16 * pi)) -
                               1),
                      1e-6});
  }
  {
    ScenarioConfig c;
    c.scenario_id = "two_halfplates";
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
      c.bc = bc;
      auto b = build(c);
      auto g = scenario_grid(c, b.scene);
      const double q = diagram_energy(b.scene, parse_diagram("[21]"), *g);
      const double f = two_halfplates_energy(c.phi1, c.phi2, c.D, 1, bc).value;
      checks.push_back({std::string("two half-plates closed form vs quadrature, ") + to_string(bc),
                        std::abs(q / f - 1), 1e-4});
    }
  }
  {
    Scene s;
    s.objects = {{HalfPlate{}, {Vec2(-1, 0), pi}}, {HalfPlate{}, {Vec2(1, 0), 0.0}}, {InfinitePlate{}, {Vec2(0, 0), pi / 2}}};
    auto g = make_grid(64, 2.0, 32, 0.5);
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
      s.bc = bc;
      const double a = diagram_energy(s, parse_diagram("[21]"), *g);
      const double b = diagram_energy(s, parse_diagram("[321]"), *g);
      const double c2 = diagram_energy(s, parse_diagram("[231]"), *g);
      const double d = diagram_energy(s, parse_diagram("[3231]"), *g);
      std::printf("cancellation residuals (%s): [21]+[321] = %.3e, [231]+[3231] = %.3e\n", to_string(bc).c_str(),
                  std::abs(a + b) / std::abs(a), std::abs(c2 + d) / std::abs(c2));
      checks.push_back({"blocking [21]+[321] (" + to_string(bc) + ")", std::abs(a + b) / std::abs(a), 1e-8});
      checks.push_back({"blocking [231]+[3231] (" + to_string(bc) + ")", std::abs(c2 + d) / std::abs(c2), 1e-8});
    }
  }
  {
    double spread = 0;
    for (double phi : {0.3, 1.0, 2.0}) {
      const double ref = needle_edge_f(phi, 0) + needle_edge_f(phi, pi / 2);
      for (double th = 0; th < pi; th += 0.1)
        spread = std::max(spread, std::abs(needle_edge_f(phi, th) + needle_edge_f(phi, th + pi / 2) - ref));
    }
    checks.push_back({"needle: f(theta)+f(theta+pi/2) spread", spread, 1e-10});
    checks.push_back({"needle: E00(phi0 -> 0)", std::abs(needle_edge_E00(1e-7, 1, 1)), 1e-6});
  }
  int fails = 0;
  std::printf("%-58s %12s %10s  %s\n", "check", "measured", "tolerance", "result");
  for (const auto& c : checks) {
    std::printf("%-58s %12.3e %10.1e  %s\n", c.name.c_str(), c.measured, c.tolerance, c.pass() ? "PASS" : "FAIL");
    fails += !c.pass();
  }
  return fails ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energies from multiple-reflection diagrams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Overrides o;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", o.config, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
    s->add_option("--out", o.out, "output directory");
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--grid-alpha", o.grid_alpha, "rapidity nodes (even)");
    s->add_option("--grid-p", o.grid_p, "frequency nodes");
    s->add_option("--nmax", o.nmax, "maximum reflection order");
    s->add_flag("--allow-continuation", o.allow_continuation, "evaluate closed forms outside their range of validity");
  };
  auto* run = app.add_subcommand("run", "run a scenario config, write CSV + manifest");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "run a scenario with the sweep given on the command line");
  add_common(sweep);
  sweep->add_option("--param", o.param, "swept parameter")->required();
  sweep->add_option("--from", o.from)->required();
  sweep->add_option("--to", o.to)->required();
  sweep->add_option("--steps", o.steps)->required()->check(CLI::PositiveNumber);
  int M = 2, nmax = 4;
  auto* diag = app.add_subcommand("diagrams", "list canonical diagrams");
  diag->add_option("--objects", M, "number of objects")->required();
  diag->add_option("--nmax", nmax, "maximum order");
  auto* verify = app.add_subcommand("verify", "run the oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kValidation;
  }
  try {
    if (*run || *sweep) return cmd_run(o);
    if (*diag) return cmd_diagrams(M, nmax);
    if (*verify) return cmd_verify();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
