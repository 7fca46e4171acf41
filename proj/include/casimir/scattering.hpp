#pragma once

#include <variant>

#include "casimir/quadrature.hpp"

namespace casimir {

enum class BoundaryCondition { Dirichlet, Neumann, EM2D };
enum class Channel { LL, RL };
enum class Polarization { M, E };

struct PerfectPlate {};
struct HalfPlate {
  double phi = 0.0;
};
struct InfinitePlate {};
struct Needle {
  double t00 = 0.0;
  double txx = 0.0;
  double tyy = 0.0;
  double theta0 = 0.0;
};

using ScattererDescriptor = std::variant<PerfectPlate, HalfPlate, InfinitePlate, Needle>;

struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// +1 for Dirichlet, -1 for Neumann.
double bc_sign(BoundaryCondition bc);
std::string to_string(BoundaryCondition bc);
std::string to_string(Channel c);

// Real part wrapped into (-π, π].
cd wrap_angle(cd z);

// Half-plate kernel ½(−sec((a'*−a)/2) ∓ sec((a'*+a)/2)), s = +1 Dirichlet, −1 Neumann.
cd halfplate_T(double s, cd a, cd a_out_conj);

// Local form with a = iα − φ and a' = iα' − φ; RL = ±LL. A positive eps evaluates at φ − eps.
Kernel halfplate_kernel(BoundaryCondition bc, Channel channel, double phi, const GridPtr& grid, double eps = 0.0);

Kernel infinite_plate_rl(const GridPtr& grid);

// Indexed (m + 1, m' + 1) for m, m' ∈ {−1, 0, 1}; psi defaults to the descriptor's theta0.
Eigen::Matrix3cd needle_T_multipole(const Needle& n, double p);
Eigen::Matrix3cd needle_T_multipole(const Needle& n, double p, double psi);

// π ∑ (−1)^{m+m'} e^{i m' a'* − i m a} T_{m m'}
cd needle_planar(const Eigen::Matrix3cd& T, cd a, cd a_out_conj);

// Evaluated at a = iα, a'* = conj(iα').
Kernel needle_kernel_planar(const Needle& n, double p, const GridPtr& grid);

double perfect_plate_eigenvalue(BoundaryCondition bc);
double perfect_plate_eigenvalue(Polarization pol);

// Global-frame evaluation for legs with axes theta_in, theta_out: a = θ + iα on the grid.
// beta is the plate direction (from its edge into the plate).
CMatrix halfplate_global(double beta, double s, double theta_out, double theta_in, const QuadratureGrid& g);
// psi is the needle's long-axis direction.
CMatrix needle_global(const Needle& n, double psi, double p, double theta_out, double theta_in, const QuadratureGrid& g);

}  // namespace casimir
