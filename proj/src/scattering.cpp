#include "casimir/scattering.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace casimir {

namespace {
constexpr double pi = std::numbers::pi;
const cd I(0.0, 1.0);
}  // namespace

double bc_sign(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return 1.0;
    case BoundaryCondition::Neumann: return -1.0;
    case BoundaryCondition::EM2D: return -1.0;
  }
  return 1.0;
}

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return "D";
    case BoundaryCondition::Neumann: return "N";
    case BoundaryCondition::EM2D: return "EM";
  }
  return "?";
}

std::string to_string(Channel c) { return c == Channel::LL ? "LL" : "RL"; }

cd wrap_angle(cd z) {
  double r = std::remainder(z.real(), 2 * pi);
  if (r <= -pi) r += 2 * pi;
  return {r, z.imag()};
}

cd halfplate_T(double s, cd a, cd apc) {
  return 0.5 * (-1.0 / std::cos(0.5 * (apc - a)) - s / std::cos(0.5 * (apc + a)));
}

Kernel halfplate_kernel(BoundaryCondition bc, Channel channel, double phi, const GridPtr& grid, double eps) {
  const double s = bc_sign(bc);
  const double ph = phi - eps;
  if (std::abs(std::cos(ph)) < 1e-12)
    throw ResolutionError("halfplate_kernel: sec pole on the grid at diagonal node 0 (alpha = " +
                          std::to_string(grid->alpha_nodes[0]) + "); pass a positive eps");
  const int n = grid->n_alpha();
  Kernel k{CMatrix(n, n), grid, false};
  const double sign = channel == Channel::RL ? s : 1.0;
  for (int i = 0; i < n; ++i) {
    cd apc = -I * grid->alpha_nodes[i] - ph;
    for (int j = 0; j < n; ++j) {
      cd a = I * grid->alpha_nodes[j] - ph;
      k.entries(i, j) = sign * halfplate_T(s, a, apc);
    }
  }
  if (!k.finite()) throw ResolutionError("halfplate_kernel: non-finite entry, grid too close to sec pole");
  return k;
}

Kernel infinite_plate_rl(const GridPtr& grid) {
  CVector v = CVector::Constant(grid->n_alpha(), cd(-1.0, 0.0));
  return diagonal_kernel(grid, v);
}

Eigen::Matrix3cd needle_T_multipole(const Needle& n, double p) { return needle_T_multipole(n, p, n.theta0); }

Eigen::Matrix3cd needle_T_multipole(const Needle& n, double p, double psi) {
  const double p2 = p * p;
  Eigen::Matrix3cd T = Eigen::Matrix3cd::Zero();
  const double sum = 0.5 * (n.txx + n.tyy), diff = 0.5 * (n.txx - n.tyy);
  T(1, 1) = p2 * n.t00;
  T(2, 2) = T(0, 0) = 4.0 * p2 * sum;
  T(2, 0) = 4.0 * p2 * diff * std::exp(2.0 * I * psi);   // m = 1, m' = −1
  T(0, 2) = 4.0 * p2 * diff * std::exp(-2.0 * I * psi);  // m = −1, m' = 1
  return T;
}

cd needle_planar(const Eigen::Matrix3cd& T, cd a, cd apc) {
  cd s = 0;
  for (int m = -1; m <= 1; ++m)
    for (int mp = -1; mp <= 1; ++mp) {
      cd t = T(m + 1, mp + 1);
      if (t == cd(0)) continue;
      double sg = ((m + mp) % 2 == 0) ? 1.0 : -1.0;
      s += sg * std::exp(I * static_cast<double>(mp) * apc - I * static_cast<double>(m) * a) * t;
    }
  return pi * s;
}

Kernel needle_kernel_planar(const Needle& n, double p, const GridPtr& grid) {
  auto T = needle_T_multipole(n, p);
  const int N = grid->n_alpha();
  Kernel k{CMatrix(N, N), grid, false};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      k.entries(i, j) = needle_planar(T, I * grid->alpha_nodes[j], std::conj(I * grid->alpha_nodes[i]));
  return k;
}

double perfect_plate_eigenvalue(BoundaryCondition bc) { return bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0; }

double perfect_plate_eigenvalue(Polarization pol) { return pol == Polarization::M ? -1.0 : 1.0; }

CMatrix halfplate_global(double beta, double s, double theta_out, double theta_in, const QuadratureGrid& g) {
  const int n = g.n_alpha();
  CMatrix T(n, n);
  CVector a(n), apc(n);
  for (int i = 0; i < n; ++i) {
    a(i) = wrap_angle(cd(theta_in - beta, g.alpha_nodes[i]));
    apc(i) = wrap_angle(cd(theta_out - beta + pi, g.alpha_nodes[i]));
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) T(i, j) = halfplate_T(s, a(j), apc(i));
  if (!T.allFinite()) throw ResolutionError("halfplate_global: sec pole on the integration contour");
  return T;
}

CMatrix needle_global(const Needle& nd, double psi, double p, double theta_out, double theta_in, const QuadratureGrid& g) {
  const int n = g.n_alpha();
  auto M = needle_T_multipole(nd, p, psi);
  // Separable: e^{i m' a'*} e^{−i m a}.
  Eigen::MatrixXcd L(n, 3), R(3, n);
  for (int i = 0; i < n; ++i) {
    cd apc(theta_out + pi, g.alpha_nodes[i]);
    cd a(theta_in, g.alpha_nodes[i]);
    for (int m = -1; m <= 1; ++m) {
      L(i, m + 1) = std::exp(I * static_cast<double>(m) * apc);
      R(m + 1, i) = std::exp(-I * static_cast<double>(m) * a);
    }
  }
  Eigen::Matrix3cd S;
  for (int m = -1; m <= 1; ++m)
    for (int mp = -1; mp <= 1; ++mp) S(mp + 1, m + 1) = (((m + mp) % 2 == 0) ? 1.0 : -1.0) * M(m + 1, mp + 1);
  return pi * (L * S * R);
}

}  // namespace casimir
