#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "casimir/scattering.hpp"

namespace casimir {

// Units ħ = c = 1: energies carry a hidden factor ħc.
struct ClosedFormResult {
  double value = 0;
  std::string formula_id;
  std::map<std::string, double> inputs;
  bool continuation = false;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace cf {

inline constexpr double series_radius = 1e-2;

template <class T>
double val(const T& x) {
  if constexpr (std::is_arithmetic_v<T>) return x;
  else return static_cast<double>(x);
}

// −4/3 + csc³φ(2φ − sin 2φ)
template <class T>
T e00_bracket(const T& x) {
  using std::sin;
  if (std::abs(val(x)) < series_radius) {
    T x2 = x * x;
    return x2 * (2.0 / 5 + x2 * (17.0 / 210 + x2 * (29.0 / 2100)));
  }
  T s = sin(x);
  return -4.0 / 3 + (2.0 * x - sin(2.0 * x)) / (s * s * s);
}

// B(φ, θ) with f = −B/(8πD³).
template <class T, class U>
T f_bracket(const T& x, const U& th) {
  using std::cos;
  using std::sin;
  if (std::abs(val(x)) < series_radius) {
    U s = sin(th), s2 = sin(2.0 * th), c2 = cos(2.0 * th);
    return (4.0 / 3) * s * s - (2.0 / 3) * s2 * x + (3.0 / 5 + (2.0 / 15) * c2) * x * x - (7.0 / 45) * s2 * x * x * x;
  }
  T csc = 1.0 / sin(x);
  T cot = cos(x) * csc;
  return -4.0 / 3 + cos(2.0 * th) * (-2.0 + cot * csc) -
         csc * (3.0 * cot + 2.0 * sin(2.0 * th) + x * (-3.0 + cos(2.0 * th + 2.0 * x)) * csc * csc);
}

template <class T, class U, class V>
auto f_needle(const T& phi, const U& th, const V& D) {
  return -f_bracket(phi, th) / (8 * std::numbers::pi * D * D * D);
}

// cot³φ(−24φ + 6 sin 2φ + 5 sin 3φ + 3 sin 4φ − 3 sin 5φ)
template <class T>
T repulsion_bracket(const T& x) {
  using std::sin;
  using std::tan;
  if (std::abs(val(x)) < series_radius) {
    T x2 = x * x;
    return x2 * (-204.0 / 5 + x2 * (2633.0 / 35));
  }
  T c = 1.0 / tan(x);
  return c * c * c * (-24.0 * x + 6.0 * sin(2.0 * x) + 5.0 * sin(3.0 * x) + 3.0 * sin(4.0 * x) - 3.0 * sin(5.0 * x));
}

// 8/3 − 4 cscφ1 cscφ2 + 4(φ1 csc²φ1 + φ2 csc²φ2) csc(φ1+φ2)
double halfplate_cross_term(double p1, double p2);

// π/(1+cosφ) inside |φ| ≤ π/2, −π/(1−cosφ) beyond.
double halfplate_edge_term(double phi);

}  // namespace cf

// Energy per area (D_dim = 3) or length (D_dim = 2), scalar D/N or EM.
double parallel_plate_energy(int D_dim, double d, BoundaryCondition bc = BoundaryCondition::Dirichlet);
// Pressure magnitude a_D/d^(D+1), times 2 for EM.
double parallel_plate_force(int D_dim, double d, double area_or_length = 1.0,
                            BoundaryCondition bc = BoundaryCondition::Dirichlet);
double parallel_plate_per_order(int D_dim, double d, int n, BoundaryCondition bc = BoundaryCondition::Dirichlet);
double parallel_plate_coefficient(int D_dim);

// EM2D here means the 3D electromagnetic sum D + N.
ClosedFormResult two_halfplates_energy(double phi1, double phi2, double D, double L, BoundaryCondition bc,
                                       bool allow_continuation = false);

double needle_edge_E00(double phi0, double D, double t00);
double needle_edge_Exx(double phi0, double theta0, double D, double txx);
double needle_edge_Eyy(double phi0, double theta0, double D, double tyy);
double needle_edge_f(double phi0, double theta0, double D = 1.0);

// d = half-gap, φ0 = atan(h/d).
double repulsion_energy(double phi0, double d, double tyy);

}  // namespace casimir
