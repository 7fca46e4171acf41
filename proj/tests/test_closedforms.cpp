#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "casimir/closedforms.hpp"

using namespace casimir;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("parallel plates") {
  CHECK(parallel_plate_energy(2, 1.0) == doctest::Approx(-boost::math::zeta(3.0) / (16 * pi)).epsilon(1e-15));
  CHECK(parallel_plate_energy(3, 2.0) == doctest::Approx(-pi * pi / 1440 / 8).epsilon(1e-14));
  CHECK(parallel_plate_energy(3, 1.0, BoundaryCondition::EM2D) == doctest::Approx(-pi * pi / 720).epsilon(1e-14));
  for (int n = 1; n <= 8; ++n)
    CHECK(parallel_plate_per_order(3, 1.0, n) / parallel_plate_per_order(3, 1.0, 1) ==
          doctest::Approx(1.0 / std::pow(n, 4)).epsilon(1e-15));
  // F = -dE/dd
  const double h = 1e-5;
  const double fd = -(parallel_plate_energy(3, 1 + h) - parallel_plate_energy(3, 1 - h)) / (2 * h);
  CHECK(parallel_plate_force(3, 1.0) == doctest::Approx(fd).epsilon(1e-8));
  CHECK(parallel_plate_coefficient(3) == doctest::Approx(3 / (16 * pi * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(parallel_plate_energy(4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(parallel_plate_energy(3, -1.0), DomainError);
}

TEST_CASE("two half-plates: symmetry, sum rule and validity") {
  for (auto [a, b] : {std::pair{0.3, 1.1}, {-0.2, 0.8}, {1.5, 0.05}}) {
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::EM2D})
      CHECK(two_halfplates_energy(a, b, 1, 1, bc).value ==
            doctest::Approx(two_halfplates_energy(b, a, 1, 1, bc).value).epsilon(1e-13));
    const double d = two_halfplates_energy(a, b, 1, 1, BoundaryCondition::Dirichlet).value;
    const double n = two_halfplates_energy(a, b, 1, 1, BoundaryCondition::Neumann).value;
    CHECK(two_halfplates_energy(a, b, 1, 1, BoundaryCondition::EM2D).value == d + n);
  }
  CHECK(two_halfplates_energy(0.4, 0.4, 2.0, 3.0, BoundaryCondition::Dirichlet).value ==
        doctest::Approx(3.0 / 4 * two_halfplates_energy(0.4, 0.4, 1.0, 1.0, BoundaryCondition::Dirichlet).value));
  try {
    two_halfplates_energy(2.0, 0.3, 1, 1, BoundaryCondition::Dirichlet);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("range of validity") != std::string::npos);
  }
  auto r = two_halfplates_energy(2.0, 0.3, 1, 1, BoundaryCondition::Dirichlet, true);
  CHECK(r.continuation);
  CHECK_THROWS_AS(two_halfplates_energy(pi / 2, pi / 2 - 1e-8, 1, 1, BoundaryCondition::Dirichlet), DomainError);
}

TEST_CASE("two half-plates: series branch is continuous") {
  for (double y : {0.0, 0.005, 0.7}) {
    const double in = cf::halfplate_cross_term(0.9999e-2, y);
    const double out = cf::halfplate_cross_term(1.0001e-2, y);
    CHECK(in == doctest::Approx(out).epsilon(1e-6));
  }
  CHECK(cf::halfplate_cross_term(0, 0) == doctest::Approx(16.0 / 3));
}

TEST_CASE("needle closed forms") {
  CHECK(std::abs(needle_edge_E00(0.0, 1.0, 1.0)) < 1e-15);
  CHECK(needle_edge_E00(0.99e-2, 1, 1) == doctest::Approx(needle_edge_E00(1.01e-2, 1, 1)).epsilon(1e-3));
  for (double phi : {0.005, 0.3, 1.2, 2.5})
    for (double th = 0; th < pi; th += 0.37) {
      const double s = needle_edge_f(phi, th) + needle_edge_f(phi, th + pi / 2);
      CHECK(s == doctest::Approx(needle_edge_f(phi, 0.0) + needle_edge_f(phi, pi / 2)).epsilon(1e-12));
    }
  CHECK(needle_edge_Eyy(0.4, 0.2, 1.0, 2.0) == doctest::Approx(2.0 * needle_edge_f(0.4, 0.2 + pi / 2)));
  CHECK(needle_edge_Exx(0.4, 0.2, 2.0, 1.0) == doctest::Approx(needle_edge_f(0.4, 0.2) / 8));
  for (double th : {0.0, 0.4, 1.3}) {
    const double a = cf::f_bracket(0.99e-2, th), b = cf::f_bracket(1.01e-2, th);
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
  }
}

TEST_CASE("repulsion energy") {
  for (double phi = 0.05; phi <= pi / 2; phi += 0.05) CHECK(repulsion_energy(phi, 1.0, 1.0) <= 0);
  for (double phi : {0.1, 0.6, 1.2}) {
    const double D = 1.0 / std::cos(phi);
    // two edges, vertical needle: θ0 = π/2 − φ0 relative to each edge–needle axis
    const double two = 2 * needle_edge_Eyy(phi, pi / 2 - phi, D, 1.0);
    CHECK(repulsion_energy(phi, 1.0, 1.0) == doctest::Approx(two).epsilon(1e-10));
  }
  CHECK(repulsion_energy(0.0, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(repulsion_energy(0.3, 0.0, 1.0), DomainError);
}
