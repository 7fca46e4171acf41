#include "casimir/translation.hpp"

#include <cmath>

namespace casimir {

CVector translation_values(double theta, const Vec2& delta, double p, const QuadratureGrid& g) {
  const Vec2 n(std::cos(theta), std::sin(theta)), t(-n.y(), n.x());
  const double par = n.dot(delta), perp = t.dot(delta);
  CVector v(g.n_alpha());
  for (int i = 0; i < g.n_alpha(); ++i) {
    const double a = g.alpha_nodes[i];
    v(i) = std::exp(cd(-p * par * std::cosh(a), -p * perp * std::sinh(a)));
  }
  return v;
}

CVector translation_log_derivative(double theta, const Vec2& dir, double p, const QuadratureGrid& g) {
  const Vec2 n(std::cos(theta), std::sin(theta)), t(-n.y(), n.x());
  const double par = n.dot(dir), perp = t.dot(dir);
  CVector v(g.n_alpha());
  for (int i = 0; i < g.n_alpha(); ++i) {
    const double a = g.alpha_nodes[i];
    v(i) = cd(-p * par * std::cosh(a), -p * perp * std::sinh(a));
  }
  return v;
}

Kernel translation_kernel(const TranslationSpec& spec, const GridPtr& grid) {
  const Vec2 delta = spec.to.origin - spec.from.origin;
  const double theta = spec.from.tilt;
  const Vec2 n(std::cos(theta), std::sin(theta));
  const double par = n.dot(delta);
  if (!(par > 0) && delta.norm() > 0) throw GeometryError("translation: longitudinal gap must be positive along the decay axis");
  return diagonal_kernel(grid, translation_values(theta, delta, spec.p, *grid));
}

}  // namespace casimir
