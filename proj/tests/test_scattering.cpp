#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casimir/scattering.hpp"

using namespace casimir;

namespace {
constexpr double pi = std::numbers::pi;

// Sommerfeld half-plane diffraction with angles measured from the plate face in (0, 2π).
double sommerfeld(double s, double phi_obs, double phi_src) {
  return -0.5 * (1 / std::cos((phi_obs - phi_src) / 2) - s / std::cos((phi_obs + phi_src) / 2));
}
}  // namespace

TEST_CASE("global half-plate kernel matches Sommerfeld angular structure on real angles") {
  QuadratureGrid g = build_alpha_grid(8, 1.0);
  for (auto& a : g.alpha_nodes) a = 0.0;
  for (double s : {1.0, -1.0})
    for (double beta : {0.0, 0.7, -2.0})
      for (double src : {0.4, 1.9, 4.1})
        for (double obs : {0.9, 3.3, 5.6}) {
          const double th_in = beta + src + pi;  // propagation direction of the incoming wave
          const double th_out = beta + obs;
          CMatrix T = halfplate_global(beta, s, th_out, th_in, g);
          CHECK(T(0, 0).real() == doctest::Approx(sommerfeld(s, obs, src)).epsilon(1e-12));
          CHECK(std::abs(T(0, 0).imag()) < 1e-12);
        }
}

TEST_CASE("Dirichlet half-plate does not radiate along its face") {
  QuadratureGrid g = build_alpha_grid(8, 1.0);
  for (auto& a : g.alpha_nodes) a = 0.0;
  CMatrix T = halfplate_global(0.3, 1.0, 0.3 + 1e-9, 0.3 + 2.2, g);
  CHECK(std::abs(T(0, 0)) < 1e-8);
}

TEST_CASE("half-plate kernel is covariant under rotation") {
  QuadratureGrid g = build_alpha_grid(16, 2.0);
  CMatrix a = halfplate_global(0.2, -1.0, 1.0, 2.5, g);
  CMatrix b = halfplate_global(0.2 + 0.9, -1.0, 1.9, 3.4, g);
  CHECK((a - b).norm() < 1e-12 * a.norm());
}

TEST_CASE("local kernel: RL is the boundary sign times LL") {
  auto g = make_grid(16, 2.0, 8, 1.0);
  auto ll = halfplate_kernel(BoundaryCondition::Neumann, Channel::LL, 0.6, g);
  auto rl = halfplate_kernel(BoundaryCondition::Neumann, Channel::RL, 0.6, g);
  CHECK((ll.entries + rl.entries).norm() < 1e-12 * ll.entries.norm());
  CHECK_THROWS_AS(halfplate_kernel(BoundaryCondition::Dirichlet, Channel::LL, pi / 2, g), ResolutionError);
  CHECK(halfplate_kernel(BoundaryCondition::Dirichlet, Channel::LL, pi / 2, g, g->epsilon).finite());
}

TEST_CASE("infinite plate and perfect plate conventions") {
  auto g = make_grid(16, 2.0, 8, 1.0);
  auto t = infinite_plate_rl(g);
  CHECK(std::abs(kernel_trace(t) + 16.0) < 1e-12);
  CHECK(perfect_plate_eigenvalue(BoundaryCondition::Dirichlet) == -1);
  CHECK(perfect_plate_eigenvalue(BoundaryCondition::Neumann) == 1);
  CHECK(perfect_plate_eigenvalue(Polarization::M) == -1);
  CHECK(bc_sign(BoundaryCondition::EM2D) == -1);
}

TEST_CASE("needle multipoles") {
  Needle n{0.5, 2.0, 1.0, 0.0};
  auto T = needle_T_multipole(n, 2.0, 0.3);
  CHECK(std::abs(T(1, 1) - cd(4 * 0.5, 0)) < 1e-14);
  CHECK(std::abs(T(0, 0) - T(2, 2)) < 1e-14);
  CHECK(std::abs(T(2, 0) - std::conj(T(0, 2))) < 1e-14);
  // a circle carries no orientation
  Needle c{0.0, 1.0, 1.0, 0.0};
  auto Tc = needle_T_multipole(c, 1.0, 0.7);
  CHECK(std::abs(Tc(2, 0)) < 1e-15);
  // rotating the needle and both directions leaves the amplitude unchanged
  auto T1 = needle_T_multipole(n, 1.0, 0.3);
  auto T2 = needle_T_multipole(n, 1.0, 1.1);
  cd a(0.2, 0.4), ap(1.5, -0.3);
  CHECK(std::abs(needle_planar(T1, a, ap) - needle_planar(T2, a + 0.8, ap + 0.8)) < 1e-12);
}

TEST_CASE("wrap_angle range") {
  for (double x : {-7.0, -3.2, 0.0, 3.1, 3.2, 9.5}) {
    const double w = wrap_angle(cd(x, 1.0)).real();
    CHECK(w > -pi - 1e-15);
    CHECK(w <= pi + 1e-15);
    CHECK(std::abs(std::remainder(w - x, 2 * pi)) < 1e-12);
  }
}
