#include "casimir/closedforms.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

namespace casimir {

namespace {
constexpr double pi = std::numbers::pi;

void require_dim(int D_dim) {
  if (D_dim != 2 && D_dim != 3) throw std::invalid_argument("unsupported dimension " + std::to_string(D_dim));
}

double em_factor(int D_dim, BoundaryCondition bc) {
  return (bc == BoundaryCondition::EM2D && D_dim == 3) ? 2.0 : 1.0;
}
}  // namespace

namespace cf {

double halfplate_cross_term(double x, double y) {
  if (std::abs(x) < series_radius && std::abs(y) < series_radius) {
    double x2 = x * x, y2 = y * y;
    return 16.0 / 3 + (4 * x2 + 8 * x * y / 3 + 4 * y2) / 5 +
           (17 * x2 * x2 + 38 * x2 * y2) / 105 + 68 * x * y * (x2 + y2) / 315 + 17 * y2 * y2 / 105;
  }
  if (std::abs(x) < series_radius || std::abs(y) < series_radius) {
    if (std::abs(x) >= series_radius) std::swap(x, y);
    double s = std::sin(y), c = std::cos(y);
    double s2 = s * s, s3 = s2 * s;
    double c0 = 4 * y / s3 + 8.0 / 3 - 4 * c / s2;
    double c1 = 4 * (-3 * y * c - s3 + 3 * s) / (3 * s2 * s2);
    double c2 = (12 * y * std::cos(2 * y) + 36 * y - 26 * std::sin(2 * y) + std::sin(4 * y)) / (12 * s3 * s2);
    return c0 + x * (c1 + x * c2);
  }
  double sx = std::sin(x), sy = std::sin(y);
  return 8.0 / 3 - 4 / (sx * sy) + 4 * (x / (sx * sx) + y / (sy * sy)) / std::sin(x + y);
}

double halfplate_edge_term(double phi) {
  if (std::abs(phi) <= pi / 2) return pi / (1 + std::cos(phi));
  return -pi / (1 - std::cos(phi));
}

}  // namespace cf

double parallel_plate_coefficient(int D_dim) {
  require_dim(D_dim);
  return D_dim * std::tgamma((D_dim + 1) / 2.0) / std::pow(4 * pi, (D_dim + 1) / 2.0);
}

double parallel_plate_energy(int D_dim, double d, BoundaryCondition bc) {
  require_dim(D_dim);
  if (!(d > 0)) throw DomainError("parallel plates: d must be positive");
  const double z = boost::math::zeta(static_cast<double>(D_dim + 1));
  return -em_factor(D_dim, bc) * std::tgamma((D_dim + 1) / 2.0) * z / (std::pow(4 * pi, (D_dim + 1) / 2.0) * std::pow(d, D_dim));
}

double parallel_plate_force(int D_dim, double d, double area_or_length, BoundaryCondition bc) {
  require_dim(D_dim);
  if (!(d > 0)) throw DomainError("parallel plates: d must be positive");
  const double z = boost::math::zeta(static_cast<double>(D_dim + 1));
  return -em_factor(D_dim, bc) * area_or_length * parallel_plate_coefficient(D_dim) * z / std::pow(d, D_dim + 1);
}

double parallel_plate_per_order(int D_dim, double d, int n, BoundaryCondition bc) {
  if (n < 1) throw std::invalid_argument("reflection order must be ≥ 1");
  const double z = boost::math::zeta(static_cast<double>(D_dim + 1));
  return parallel_plate_energy(D_dim, d, bc) * std::pow(static_cast<double>(n), -(D_dim + 1)) / z;
}

ClosedFormResult two_halfplates_energy(double phi1, double phi2, double D, double L, BoundaryCondition bc,
                                       bool allow_continuation) {
  ClosedFormResult r;
  r.formula_id = "two_halfplates";
  r.inputs = {{"phi1", phi1}, {"phi2", phi2}, {"D", D}, {"L", L}};
  if (!(D > 0)) throw DomainError("two_halfplates: D must be positive");
  const bool outside = std::abs(phi1) > pi / 2 || std::abs(phi2) > pi / 2;
  if (outside && !allow_continuation)
    throw DomainError("two_halfplates: |phi| > pi/2 lies outside the range of validity of this expression");
  if (std::abs(phi1 + phi2 - pi) < 1e-6 || std::abs(phi1 + phi2 + pi) < 1e-6)
    throw DomainError("two_halfplates: phi1 + phi2 -> pi, plates overlap (csc(phi1+phi2) diverges)");
  r.continuation = outside;
  const double C = cf::halfplate_cross_term(phi1, phi2);
  const double J = (pi / 2) * (cf::halfplate_edge_term(phi1) + cf::halfplate_edge_term(phi2));
  const double pref = -L / (128 * pi * pi * pi * D * D);
  auto one = [&](double s) { return pref * (s * J + C); };
  switch (bc) {
    case BoundaryCondition::Dirichlet: r.value = one(1); break;
    case BoundaryCondition::Neumann: r.value = one(-1); break;
    case BoundaryCondition::EM2D: r.value = one(1) + one(-1); break;
  }
  if (!std::isfinite(r.value)) throw DomainError("two_halfplates: non-finite value");
  return r;
}

double needle_edge_E00(double phi0, double D, double t00) {
  if (!(D > 0)) throw DomainError("needle: D must be positive");
  if (std::abs(std::sin(phi0)) < 1e-12 && std::abs(phi0) > 1) throw DomainError("needle E00: singular at phi0 = pi");
  return -t00 / (64 * pi * D * D * D) * cf::e00_bracket(phi0);
}

double needle_edge_f(double phi0, double theta0, double D) {
  if (!(D > 0)) throw DomainError("needle: D must be positive");
  if (std::abs(std::sin(phi0)) < 1e-12 && std::abs(phi0) > 1) throw DomainError("needle f: singular at phi0 = pi");
  return cf::f_needle(phi0, theta0, D);
}

double needle_edge_Exx(double phi0, double theta0, double D, double txx) {
  return txx * needle_edge_f(phi0, theta0, D);
}

double needle_edge_Eyy(double phi0, double theta0, double D, double tyy) {
  return tyy * needle_edge_f(phi0, theta0 + pi / 2, D);
}

double repulsion_energy(double phi0, double d, double tyy) {
  if (!(d > 0)) throw DomainError("repulsion: d must be positive");
  if (phi0 < 0 || phi0 > pi / 2 + 1e-15) throw DomainError("repulsion: phi0 outside [0, pi/2]");
  return tyy * cf::repulsion_bracket(phi0) / (48 * pi * d * d * d);
}

}  // namespace casimir
