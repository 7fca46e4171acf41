#include "casimir/scenarios.hpp"

#include <algorithm>
#include <boost/math/differentiation/autodiff.hpp>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
using boost::math::differentiation::make_fvar;
using ad = boost::math::differentiation::autodiff_v1::detail::fvar<double, 1>;

const std::set<std::string> kScenarios = {"parallel_plates", "two_halfplates", "three_halfplates",
                                          "blocking",        "edge_needle",    "gap_repulsion"};

SceneObject half_plate(Vec2 edge, double beta) { return {HalfPlate{}, {edge, beta}}; }

Needle needle_of(const ScenarioConfig& c) {
  if (c.needle == "circle") return {c.t00, c.tyy, c.tyy, 0.0};
  return {c.t00, c.txx, c.tyy, 0.0};
}

double needle_axis(const ScenarioConfig& c) { return c.needle == "horizontal" ? 0.0 : pi / 2; }

bool contains(const Diagram& d, int obj) { return std::count(d.word.begin(), d.word.end(), obj) > 0; }

std::vector<Diagram> filter(std::vector<Diagram> ds, const std::function<bool(const Diagram&)>& keep) {
  ds.erase(std::remove_if(ds.begin(), ds.end(), [&](const Diagram& d) { return !keep(d); }), ds.end());
  return ds;
}

void check_overlap(const Scene& s) {
  for (int i = 0; i < s.size(); ++i) {
    if (!std::holds_alternative<HalfPlate>(s.objects[i].desc)) continue;
    const Vec2 u(std::cos(s.objects[i].pose.tilt), std::sin(s.objects[i].pose.tilt));
    for (int j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      const Vec2 r = s.objects[j].pose.origin - s.objects[i].pose.origin;
      if (std::abs(u.x() * r.y() - u.y() * r.x()) < 1e-12 * std::max(1.0, r.norm()) && u.dot(r) >= 0)
        throw GeometryError("object " + std::to_string(j + 1) + " overlaps half-plate " + std::to_string(i + 1));
    }
  }
}

// E00 + Exx + Eyy of a needle at (x, y) against a half-line with edge e and direction beta.
template <class T>
T edge_needle_energy(const T& x, const T& y, const Vec2& e, double beta, double psi, double t00, double txx,
                     double tyy) {
  using std::atan2;
  using std::sqrt;
  const double cb = std::cos(beta), sb = std::sin(beta);
  T rx = cb * (x - e.x()) + sb * (y - e.y());
  T ry = -sb * (x - e.x()) + cb * (y - e.y());
  double rel = psi - beta;
  if (cf::val(ry) < 0) {
    ry = -ry;
    rel = -rel;
  }
  T D = sqrt(rx * rx + ry * ry);
  T chi = atan2(ry, rx);
  T phi0 = pi - chi;
  T th = chi - rel;
  T e00 = -t00 / (64 * pi) * cf::e00_bracket(phi0) / (D * D * D);
  return e00 + txx * cf::f_needle(phi0, th, D) + tyy * cf::f_needle(phi0, th + pi / 2, D);
}

struct EdgeRef {
  Vec2 edge;
  double beta;
};

Vec2 needle_force(const std::vector<EdgeRef>& edges, const Vec2& pos, double psi, double t00, double txx,
                  double tyy) {
  Vec2 F = Vec2::Zero();
  for (const auto& e : edges) {
    auto gx = edge_needle_energy(make_fvar<double, 1>(pos.x()), ad(pos.y()), e.edge, e.beta, psi, t00, txx, tyy);
    auto gy = edge_needle_energy(ad(pos.x()), make_fvar<double, 1>(pos.y()), e.edge, e.beta, psi, t00, txx, tyy);
    F -= Vec2(gx.derivative(1), gy.derivative(1));
  }
  return F;
}

template <class F>
void parallel_for(int n, int threads, F&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

double& param_ref(ScenarioConfig& c, const std::string& name) {
  if (name == "d") return c.d;
  if (name == "D") return c.D;
  if (name == "phi1") return c.phi1;
  if (name == "phi2") return c.phi2;
  if (name == "h") return c.h;
  if (name == "d1") return c.d1;
  if (name == "d2") return c.d2;
  if (name == "phi0") return c.phi0;
  if (name == "theta0") return c.theta0;
  throw std::invalid_argument("sweep: unknown parameter '" + name + "'");
}

}  // namespace

std::vector<double> SweepSpec::values() const {
  if (steps < 1) throw std::invalid_argument("sweep.steps must be ≥ 1");
  if (steps == 1) return {lo};
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * i / (steps - 1);
  std::sort(v.begin(), v.end());
  return v;
}

void ScenarioConfig::validate() const {
  if (!kScenarios.count(scenario_id)) throw std::invalid_argument("scenario_id: unknown scenario '" + scenario_id + "'");
  if (n_max < 2) throw std::invalid_argument("n_max: must be ≥ 2");
  if (threads < 1) throw std::invalid_argument("threads: must be ≥ 1");
  if (grid_alpha < 0 || grid_p < 0 || map_scale < 0) throw std::invalid_argument("grid: sizes must be non-negative");
  if (!(needle == "vertical" || needle == "horizontal" || needle == "circle"))
    throw std::invalid_argument("needle: must be vertical, horizontal or circle");
  if (scenario_id == "parallel_plates" && dim != 2 && dim != 3) throw std::invalid_argument("dim: must be 2 or 3");
  if (!sweep.param.empty()) {
    ScenarioConfig tmp = *this;
    param_ref(tmp, sweep.param);
    if (sweep.steps < 1) throw std::invalid_argument("sweep.steps: must be ≥ 1");
  }
  auto pts = sweep.param.empty() ? std::vector<double>{0.0} : sweep.values();
  for (double v : pts) {
    ScenarioConfig t = *this;
    if (!sweep.param.empty()) param_ref(t, sweep.param) = v;
    if (t.scenario_id == "two_halfplates" && !allow_continuation &&
        (std::abs(t.phi1) > pi / 2 || std::abs(t.phi2) > pi / 2))
      throw std::invalid_argument("phi1/phi2: |phi| > pi/2 is outside the range of validity of the two-half-plate expression (set allow_continuation)");
    if ((t.scenario_id == "parallel_plates" || t.scenario_id == "gap_repulsion") && !(t.d > 0))
      throw std::invalid_argument("d: must be positive");
    if ((t.scenario_id == "two_halfplates" || t.scenario_id == "edge_needle") && !(t.D > 0))
      throw std::invalid_argument("D: must be positive");
    if ((t.scenario_id == "three_halfplates" || t.scenario_id == "blocking") && !(t.d1 > 0 && t.d2 > 0))
      throw std::invalid_argument("d1/d2: must be positive");
    if (t.scenario_id == "edge_needle" && !(t.phi0 >= 0 && t.phi0 < pi))
      throw std::invalid_argument("phi0: must lie in [0, pi)");
  }
}

ScenarioBuild build(const ScenarioConfig& c) {
  c.validate();
  ScenarioBuild b;
  Scene& s = b.scene;
  s.bc = c.bc;
  s.threads = c.threads;
  const auto& id = c.scenario_id;
  if (id == "parallel_plates") {
    s.dim = c.dim == 2 ? Dimension::TwoD : Dimension::TwoAndHalfD;
    s.objects = {{PerfectPlate{}, {Vec2(0, 0), 0.0}}, {PerfectPlate{}, {Vec2(0, c.d), 0.0}}};
    b.diagrams = enumerate(2, c.n_max);
    b.leading = {b.diagrams.front()};
    b.quantity = "energy";
  } else if (id == "two_halfplates") {
    s.objects = {half_plate(Vec2(0, 0), -pi / 2 + c.phi1), half_plate(Vec2(0, c.D), pi / 2 - c.phi2)};
    b.diagrams = enumerate(2, c.n_max);
    b.leading = {b.diagrams.front()};
    b.quantity = "energy";
  } else if (id == "three_halfplates" || id == "blocking") {
    s.objects = {half_plate(Vec2(-c.d1, 0), pi), half_plate(Vec2(c.d2, 0), 0.0), half_plate(Vec2(0, c.h), pi / 2)};
    if (id == "three_halfplates") {
      b.diagrams = filter(enumerate(3, c.n_max), [](const Diagram& d) { return contains(d, 3); });
      b.leading = {parse_diagram("[31]"), parse_diagram("[32]")};
      b.quantity = "force";
    } else {
      b.diagrams = filter(enumerate(3, c.n_max), [](const Diagram& d) { return contains(d, 1) && contains(d, 2); });
      b.leading = filter(b.diagrams, [](const Diagram& d) {
        auto w = d.str();
        return w == "[21]" || w == "[321]" || w == "[231]" || w == "[3231]";
      });
      b.quantity = "I12";
    }
  } else if (id == "edge_needle") {
    s.dim = Dimension::TwoD;
    const Vec2 pos = c.D * Vec2(-std::cos(c.phi0), std::sin(c.phi0));
    s.objects = {half_plate(Vec2(0, 0), 0.0), {Needle{c.t00, c.txx, c.tyy, c.theta0}, {pos, pi - c.phi0 - c.theta0}}};
    b.diagrams = enumerate(2, c.n_max);
    b.leading = {b.diagrams.front()};
    b.quantity = "energy";
  } else if (id == "gap_repulsion") {
    s.dim = Dimension::TwoD;
    s.objects = {half_plate(Vec2(-c.d, 0), pi), half_plate(Vec2(c.d, 0), 0.0),
                 {needle_of(c), {Vec2(0, c.h), needle_axis(c)}}};
    b.diagrams = filter(enumerate(3, c.n_max),
                        [](const Diagram& d) { return std::count(d.word.begin(), d.word.end(), 3) == 1; });
    b.leading = {parse_diagram("[31]"), parse_diagram("[32]")};
    b.quantity = "force";
    b.notes.push_back("edge-to-needle distance D = sqrt(d^2 + h^2), phi0 = atan(h/d) per half-line, d = half-gap");
  }
  if (s.dim == Dimension::TwoD && s.bc == BoundaryCondition::EM2D)
    b.notes.push_back("2D electromagnetism evaluated as the Neumann scalar problem");
  s.validate();
  check_overlap(s);
  return b;
}

GridPtr scenario_grid(const ScenarioConfig& c, const Scene& s) {
  if (c.scenario_id == "parallel_plates") {
    return make_grid(c.grid_alpha ? c.grid_alpha : 512, c.map_scale > 0 ? c.map_scale : 4.0, c.grid_p ? c.grid_p : 96,
                     1.0 / c.d, -20.0, 4.0);
  }
  double gap = 1e300;
  for (int i = 0; i < s.size(); ++i)
    for (int j = i + 1; j < s.size(); ++j) gap = std::min(gap, (s.objects[i].pose.origin - s.objects[j].pose.origin).norm());
  bool has_needle = false;
  for (const auto& o : s.objects) has_needle |= std::holds_alternative<Needle>(o.desc);
  return make_grid(c.grid_alpha ? c.grid_alpha : 128, c.map_scale > 0 ? c.map_scale : (has_needle ? 3.0 : 2.0),
                   c.grid_p ? c.grid_p : 48, 1.0 / gap);
}

namespace {

struct Row {
  std::vector<double> values;
  std::string warning;
};

double quantity_of(const ScenarioBuild& b, const Scene& s, const Diagram& d, const QuadratureGrid& g) {
  if (b.quantity == "energy") return diagram_energy(s, d, g);
  if (b.quantity == "force") {
    const int obj = 3;
    return force(s, {d}, obj, Vec2(0, 1), g, ForceMethod::AnalyticDerivative, false).value;
  }
  return interaction_I12(s, {d}, Vec2(-1, 0), Vec2(1, 0), g);
}

std::string quantity_prefix(const std::string& q) { return q == "energy" ? "E" : q == "force" ? "F" : "I12"; }

std::string quantity_unit(const ScenarioBuild& b, bool two_d) {
  if (b.quantity == "energy") return two_d ? "hbar*c/length" : "hbar*c*L/length^2";
  if (b.quantity == "force") return two_d ? "hbar*c/length^2" : "hbar*c*L/length^3";
  return "hbar*c*L/length^4";
}

}  // namespace

CurveOutput run(const ScenarioConfig& c) {
  c.validate();
  CurveOutput out;
  const ScenarioBuild proto = build(c);
  const bool pp = c.scenario_id == "parallel_plates";
  const bool two_d = proto.scene.dim == Dimension::TwoD;
  const bool dn = !pp && !two_d;
  const std::string sweep_name = c.sweep.param.empty() ? "point" : c.sweep.param;
  const std::string Q = quantity_prefix(proto.quantity);
  const std::string unit = pp ? (c.dim == 2 ? "hbar*c/length^2 per length" : "hbar*c/length^3 per area")
                              : quantity_unit(proto, two_d);

  out.columns = {sweep_name, "total"};
  out.units = {sweep_name.rfind("phi", 0) == 0 || sweep_name == "theta0" ? "rad" : "length", unit};
  for (const auto& d : proto.diagrams) {
    out.columns.push_back(d.str());
    out.units.push_back(unit);
  }
  out.n_diagram_columns = static_cast<int>(proto.diagrams.size());
  std::set<int> orders;
  for (const auto& d : proto.diagrams) orders.insert(d.order());
  for (int o : orders) {
    out.columns.push_back("order" + std::to_string(o));
    out.units.push_back(unit);
  }
  out.columns.push_back("leading");
  out.units.push_back(unit);
  out.columns.push_back("trunc_est");
  out.units.push_back(unit);
  if (dn) {
    for (auto n : {"_D", "_N", "_EM"}) {
      out.columns.push_back(Q + n);
      out.units.push_back(unit);
    }
  }
  const bool has_closed = c.scenario_id != "blocking";
  if (has_closed) {
    out.columns.push_back("closed_form");
    out.units.push_back(unit);
  }
  out.columns.push_back("imag_ratio");
  out.units.push_back("1");
  if (c.cross_check && proto.quantity == "force") {
    out.columns.push_back("fd_delta");
    out.units.push_back("1");
  }
  out.notes = proto.notes;
  out.notes.push_back("quantity: " + proto.quantity + " (" + unit + ")");
  if (two_d && !pp && c.bc == BoundaryCondition::Dirichlet)
    out.notes.push_back("closed_form: needle formulas hold for the 2D EM (Neumann) case only; left empty for D");

  const auto pts = c.sweep.param.empty() ? std::vector<double>{0.0} : c.sweep.values();
  std::vector<Row> rows(pts.size());
  std::vector<std::string> errors(pts.size());

  auto eval = [&](int i) {
    try {
      ScenarioConfig ci = c;
      if (!c.sweep.param.empty()) param_ref(ci, c.sweep.param) = pts[i];
      ScenarioBuild b = build(ci);
      b.scene.threads = c.sweep.param.empty() || pts.size() == 1 ? c.threads : 1;
      GridPtr g = scenario_grid(ci, b.scene);
      Row& r = rows[i];
      if (ci.scenario_id == "three_halfplates" && ci.h < -4 * std::min(ci.d1, ci.d2))
        r.warning = "plate 3 threads the gap far from its edge: separating cones are narrow, check grid convergence";
      std::vector<double> per(b.diagrams.size()), perD(b.diagrams.size()), perN(b.diagrams.size());
      double max_imag = 0;
      if (pp) {
        for (size_t k = 0; k < b.diagrams.size(); ++k)
          per[k] = parallel_plate_order_quadrature(ci.dim, ci.d, ci.bc, *g, b.diagrams[k].order() / 2) *
                   (ci.dim == 3 && ci.bc == BoundaryCondition::EM2D ? 2.0 : 1.0);
      } else if (dn) {
        for (size_t k = 0; k < b.diagrams.size(); ++k) {
          Scene sd = b.scene, sn = b.scene;
          sd.bc = BoundaryCondition::Dirichlet;
          sn.bc = BoundaryCondition::Neumann;
          perD[k] = quantity_of(b, sd, b.diagrams[k], *g);
          perN[k] = quantity_of(b, sn, b.diagrams[k], *g);
          per[k] = ci.bc == BoundaryCondition::Dirichlet ? perD[k]
                   : ci.bc == BoundaryCondition::Neumann ? perN[k]
                                                         : perD[k] + perN[k];
        }
      } else {
        for (size_t k = 0; k < b.diagrams.size(); ++k) per[k] = quantity_of(b, b.scene, b.diagrams[k], *g);
      }
      if (!pp && proto.quantity == "energy") max_imag = evaluate_diagrams(b.scene, b.diagrams, *g).max_imag_ratio;

      double total = 0;
      for (double v : per) total += v;
      std::map<int, double> by_order;
      for (size_t k = 0; k < b.diagrams.size(); ++k) by_order[b.diagrams[k].order()] += per[k];
      double leading = 0;
      for (size_t k = 0; k < b.diagrams.size(); ++k)
        if (std::find(b.leading.begin(), b.leading.end(), b.diagrams[k]) != b.leading.end()) leading += per[k];

      r.values = {pts[i], total};
      r.values.insert(r.values.end(), per.begin(), per.end());
      for (int o : orders) r.values.push_back(by_order[o]);
      r.values.push_back(leading);
      r.values.push_back(by_order.empty() ? 0.0 : std::abs(by_order.rbegin()->second));
      if (dn) {
        double eD = 0, eN = 0;
        for (size_t k = 0; k < per.size(); ++k) {
          eD += perD[k];
          eN += perN[k];
        }
        r.values.insert(r.values.end(), {eD, eN, eD + eN});
      }
      if (has_closed) {
        double cfv = std::nan("");
        if (pp) {
          cfv = 0;
          for (int n = 1; n <= ci.n_max / 2; ++n) cfv += parallel_plate_per_order(ci.dim, ci.d, n, ci.bc);
        } else if (ci.scenario_id == "two_halfplates") {
          auto res = two_halfplates_energy(ci.phi1, ci.phi2, ci.D, ci.L, ci.bc, ci.allow_continuation);
          cfv = res.value;
          if (res.continuation) r.warning = "phi outside |phi| <= pi/2: closed form evaluated by continuation";
        } else if (two_d && ci.bc == BoundaryCondition::Dirichlet) {
        } else if (ci.scenario_id == "edge_needle") {
          cfv = needle_edge_E00(ci.phi0, ci.D, ci.t00) + needle_edge_Exx(ci.phi0, ci.theta0, ci.D, ci.txx) +
                needle_edge_Eyy(ci.phi0, ci.theta0, ci.D, ci.tyy);
        } else if (ci.scenario_id == "gap_repulsion") {
          const Needle n = needle_of(ci);
          cfv = needle_force({{Vec2(-ci.d, 0), pi}, {Vec2(ci.d, 0), 0.0}}, Vec2(0, ci.h), needle_axis(ci), n.t00,
                             n.txx, n.tyy)
                    .y();
        } else if (ci.scenario_id == "three_halfplates" && ci.h > 0) {
          auto e2 = [&](double hh) {
            double e = 0;
            for (double dd : {ci.d1, ci.d2}) {
              const double a = std::atan(hh / dd);
              e += two_halfplates_energy(a, pi / 2 - a, std::hypot(dd, hh), ci.L, ci.bc).value;
            }
            return e;
          };
          const double step = 1e-4 * std::min({ci.h, ci.d1, ci.d2});
          cfv = -(e2(ci.h + step) - e2(ci.h - step)) / (2 * step);
        }
        r.values.push_back(cfv);
      }
      r.values.push_back(max_imag);
      if (c.cross_check && proto.quantity == "force") {
        Scene sc = b.scene;
        if (dn) sc.bc = ci.bc;
        r.values.push_back(force(sc, b.diagrams, 3, Vec2(0, 1), *g, ForceMethod::AnalyticDerivative, true)
                               .cross_check_delta);
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  const bool par = c.threads > 1 && pts.size() > 1;
  parallel_for(static_cast<int>(pts.size()), par ? c.threads : 1, eval);

  for (size_t i = 0; i < pts.size(); ++i) {
    if (!errors[i].empty()) {
      out.error = true;
      out.error_message = sweep_name + "=" + std::to_string(pts[i]) + ": " + errors[i];
      break;
    }
    out.rows.push_back(rows[i].values);
    if (!rows[i].warning.empty()) out.warnings.push_back(sweep_name + "=" + std::to_string(pts[i]) + ": " + rows[i].warning);
  }
  return out;
}

Vec2 needle_edge_force(double phi0, double theta0, double D, double t00, double txx, double tyy) {
  const Vec2 pos = D * Vec2(-std::cos(phi0), std::sin(phi0));
  return needle_force({{Vec2(0, 0), 0.0}}, pos, pi - phi0 - theta0, t00, txx, tyy);
}

std::vector<FieldSample> force_direction_field(const ScenarioConfig& c, const std::vector<double>& phi0s,
                                               const std::vector<double>& theta0s) {
  if (c.scenario_id != "edge_needle") throw std::invalid_argument("force_direction_field: needs edge_needle scenario");
  std::vector<FieldSample> out;
  for (double phi : phi0s) {
    const size_t start = out.size();
    double mx = 0;
    for (double th : theta0s) {
      FieldSample f;
      f.phi0 = phi;
      f.theta0 = th;
      f.position = c.D * Vec2(-std::cos(phi), std::sin(phi));
      f.force = needle_edge_force(phi, th, c.D, c.t00, c.txx, c.tyy);
      f.magnitude = f.force.norm();
      mx = std::max(mx, f.magnitude);
      out.push_back(f);
    }
    if (mx > 0)
      for (size_t i = start; i < out.size(); ++i) out[i].force /= mx;
  }
  return out;
}

}  // namespace casimir
