#include <doctest.h>

#include <cmath>

#include "casimir/translation.hpp"

using namespace casimir;

TEST_CASE("translation along the axis decays as exp(-p d cosh alpha)") {
  auto g = build_alpha_grid(16, 2.0);
  auto u = translation_values(0.4, 2.0 * Vec2(std::cos(0.4), std::sin(0.4)), 1.5, g);
  for (int i = 0; i < 16; ++i)
    CHECK(std::abs(u(i) - std::exp(-3.0 * std::cosh(g.alpha_nodes[i]))) < 1e-14);
}

TEST_CASE("translations compose along a common axis") {
  auto g = build_alpha_grid(16, 2.0);
  Vec2 a(1.0, 0.3), b(0.5, -0.8);
  auto ua = translation_values(0.1, a, 0.7, g);
  auto ub = translation_values(0.1, b, 0.7, g);
  auto uab = translation_values(0.1, a + b, 0.7, g);
  CHECK((ua.cwiseProduct(ub) - uab).norm() < 1e-13);
}

TEST_CASE("log derivative matches finite differences") {
  auto g = build_alpha_grid(16, 1.0);
  Vec2 d(1.2, 0.4), v(0.3, -1.0);
  const double h = 1e-6;
  auto up = translation_values(-0.2, d + h * v, 0.9, g);
  auto um = translation_values(-0.2, d - h * v, 0.9, g);
  auto u = translation_values(-0.2, d, 0.9, g);
  auto ld = translation_log_derivative(-0.2, v, 0.9, g);
  for (int i = 0; i < 16; ++i) {
    cd fd = (up(i) - um(i)) / (2 * h);
    CHECK(std::abs(fd - ld(i) * u(i)) < 1e-7 * std::abs(u(i)) + 1e-14);
  }
}

TEST_CASE("translation kernel requires a separating axis") {
  auto g = make_grid(16, 2.0, 8, 1.0);
  TranslationSpec ok{{Vec2(0, 0), 0.0}, {Vec2(1, 0.5), 0.0}, 1.0};
  auto k = translation_kernel(ok, g);
  CHECK(k.finite());
  TranslationSpec bad{{Vec2(0, 0), 0.0}, {Vec2(-1, 0.5), 0.0}, 1.0};
  CHECK_THROWS_AS(translation_kernel(bad, g), GeometryError);
}
