#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "casimir/assembly.hpp"
#include "casimir/closedforms.hpp"

using namespace casimir;

namespace {
constexpr double pi = std::numbers::pi;

Scene two_plates(double phi1, double phi2, double D, BoundaryCondition bc) {
  Scene s;
  s.bc = bc;
  s.objects = {{HalfPlate{}, {Vec2(0, 0), -pi / 2 + phi1}}, {HalfPlate{}, {Vec2(0, D), pi / 2 - phi2}}};
  return s;
}

Scene three_plates(double h, BoundaryCondition bc) {
  Scene s;
  s.bc = bc;
  s.objects = {{HalfPlate{}, {Vec2(-1, 0), pi}}, {HalfPlate{}, {Vec2(1, 0), 0.0}}, {HalfPlate{}, {Vec2(0, h), pi / 2}}};
  return s;
}
}  // namespace

TEST_CASE("first reflection of two half-plates reproduces the closed form") {
  auto g = make_grid(128, 2.0, 48, 1.0);
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann})
    for (auto [p1, p2] : {std::pair{0.3, 0.3}, {0.5, 1.2}, {-0.4, 0.9}, {1.4, 1.5}}) {
      const double q = diagram_energy(two_plates(p1, p2, 1.0, bc), parse_diagram("[21]"), *g);
      const double f = two_halfplates_energy(p1, p2, 1.0, 1.0, bc).value;
      CHECK(q == doctest::Approx(f).epsilon(1e-5));
    }
}

TEST_CASE("energy scales as 1/D^2 and EM is D plus N") {
  auto g1 = make_grid(96, 2.0, 40, 1.0);
  auto g2 = make_grid(96, 2.0, 40, 0.5);
  const auto d = parse_diagram("[21]");
  const double e1 = diagram_energy(two_plates(0.5, 0.7, 1.0, BoundaryCondition::Dirichlet), d, *g1);
  const double e2 = diagram_energy(two_plates(0.5, 0.7, 2.0, BoundaryCondition::Dirichlet), d, *g2);
  CHECK(e2 == doctest::Approx(e1 / 4).epsilon(1e-10));
  const double en = diagram_energy(two_plates(0.5, 0.7, 1.0, BoundaryCondition::Neumann), d, *g1);
  const double em = diagram_energy(two_plates(0.5, 0.7, 1.0, BoundaryCondition::EM2D), d, *g1);
  CHECK(em == doctest::Approx(e1 + en).epsilon(1e-14));
}

TEST_CASE("separating cones") {
  auto s = three_plates(1.0, BoundaryCondition::Dirichlet);
  auto c = leg_cone(s, 1, 2);
  CHECK(c.axis == doctest::Approx(0.0));
  auto c13 = leg_cone(s, 1, 3);
  CHECK(c13.lo <= c13.axis);
  CHECK(c13.axis <= c13.hi);
  CHECK(std::cos(c13.axis - std::atan2(1.0, 1.0)) > 0);
  Scene bad;
  bad.objects = {{HalfPlate{}, {Vec2(0, 0), 0.0}}, {HalfPlate{}, {Vec2(1, 0), pi}}};
  CHECK_THROWS_AS(leg_cone(bad, 1, 2), GeometryError);
  CHECK(vertex_channels(s, parse_diagram("[31]")) == "3:LL 1:LL");
  CHECK(vertex_channels(s, parse_diagram("[321]")).find("3:RL") != std::string::npos);
}

TEST_CASE("far below, the vertical half-plate acts as a wall") {
  auto g = make_grid(128, 2.0, 48, 1.0 / 6);
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const double h = -6.0;
    const double e = diagram_energy(three_plates(h, bc), parse_diagram("[31]"), *g);
    Scene w;
    w.bc = bc;
    w.objects = {{HalfPlate{}, {Vec2(-1, 0), pi}}, {InfinitePlate{}, {Vec2(0, 0), pi / 2}}};
    const double ew = diagram_energy(w, parse_diagram("[21]"), *g);
    CHECK(e == doctest::Approx(ew).epsilon(0.02));
  }
}

TEST_CASE("blocking pairs cancel with an infinite plate off the axis") {
  Scene s;
  s.objects = {{HalfPlate{}, {Vec2(-1, 0), pi}}, {HalfPlate{}, {Vec2(1.5, 0), 0.0}}, {InfinitePlate{}, {Vec2(0, 0.7), pi / 2}}};
  auto g = make_grid(64, 2.0, 32, 0.4);
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    s.bc = bc;
    const double a = diagram_energy(s, parse_diagram("[21]"), *g);
    const double b = diagram_energy(s, parse_diagram("[321]"), *g);
    const double c = diagram_energy(s, parse_diagram("[231]"), *g);
    const double d = diagram_energy(s, parse_diagram("[3231]"), *g);
    CHECK(std::abs(a + b) < 1e-10 * std::abs(a));
    CHECK(std::abs(c + d) < 1e-10 * std::abs(c));
  }
}

TEST_CASE("analytic forces agree with central differences") {
  auto g = make_grid(96, 2.0, 40, 1.0);
  auto s = three_plates(0.4, BoundaryCondition::Dirichlet);
  std::vector<Diagram> ds = {parse_diagram("[31]"), parse_diagram("[32]"), parse_diagram("[321]")};
  auto f = force(s, ds, 3, Vec2(0, 1), *g);
  CHECK(f.cross_check_delta < 1e-5);
  auto f2 = force(s, ds, 3, Vec2(0, 1), *g, ForceMethod::CentralDifference);
  CHECK(f2.value == doctest::Approx(f.value).epsilon(1e-5));
  auto fx = force(s, ds, 1, Vec2(1, 0), *g);
  CHECK(fx.cross_check_delta < 1e-5);
}

TEST_CASE("mixed derivative matches differences of forces") {
  auto g = make_grid(64, 2.0, 32, 0.5);
  auto s = three_plates(1.0, BoundaryCondition::Neumann);
  std::vector<Diagram> ds = {parse_diagram("[21]"), parse_diagram("[321]")};
  const double I = interaction_I12(s, ds, Vec2(-1, 0), Vec2(1, 0), *g);
  const double h = 1e-4;
  auto sp = s, sm = s;
  sp.objects[1].pose.origin.x() += h;
  sm.objects[1].pose.origin.x() -= h;
  auto fp = force(sp, ds, 1, Vec2(-1, 0), *g, ForceMethod::AnalyticDerivative, false).value;
  auto fm = force(sm, ds, 1, Vec2(-1, 0), *g, ForceMethod::AnalyticDerivative, false).value;
  CHECK(I == doctest::Approx((fp - fm) / (2 * h)).epsilon(1e-5));
}

TEST_CASE("mirror diagrams have opposite imaginary parts") {
  Scene s = three_plates(0.6, BoundaryCondition::Dirichlet);
  s.objects[2].pose.tilt = 1.3;
  s.objects[1].pose.origin.x() = 1.7;
  auto g = make_grid(64, 2.0, 32, 1.0);
  auto a = diagram_value(s, parse_diagram("[321]"), *g, 1.0);
  auto b = diagram_value(s, parse_diagram("[231]"), *g, 1.0);
  CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-9));
  CHECK(std::abs(a.imag + b.imag) < 1e-9 * std::abs(a.energy));
  auto br = evaluate_diagrams(s, enumerate(3, 3), *g);
  CHECK(br.max_imag_ratio < 1e-10);
  CHECK(br.total == doctest::Approx(br.by_order.at(2) + br.by_order.at(3)));
}

TEST_CASE("parallel plates through diagonal kernels") {
  auto g = make_grid(512, 4.0, 96, 1.0, -20.0, 4.0);
  const double e = parallel_plate_quadrature(2, 1.0, BoundaryCondition::Dirichlet, *g);
  CHECK(e == doctest::Approx(-boost::math::zeta(3.0) / (16 * pi)).epsilon(1e-6));
  const double e1 = parallel_plate_order_quadrature(2, 1.0, BoundaryCondition::Neumann, *g, 1);
  const double e2 = parallel_plate_order_quadrature(2, 1.0, BoundaryCondition::Neumann, *g, 2);
  CHECK(e2 / e1 == doctest::Approx(1.0 / 8).epsilon(1e-6));
  const double e3d = parallel_plate_quadrature(3, 1.0, BoundaryCondition::Dirichlet, *g);
  CHECK(e3d == doctest::Approx(parallel_plate_energy(3, 1.0)).epsilon(1e-6));
  CHECK_THROWS(parallel_plate_quadrature(4, 1.0, BoundaryCondition::Dirichlet, *g));
}

TEST_CASE("threaded evaluation is bit-identical") {
  auto g = make_grid(64, 2.0, 32, 1.0);
  auto s = three_plates(0.3, BoundaryCondition::Dirichlet);
  const double a = diagram_energy(s, parse_diagram("[321]"), *g);
  s.threads = 3;
  const double b = diagram_energy(s, parse_diagram("[321]"), *g);
  CHECK(a == b);
}
