#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace casimir {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct QuadratureGrid {
  std::vector<double> alpha_nodes;
  std::vector<double> alpha_weights;  // include 1/(2π)
  std::vector<double> p_nodes;
  std::vector<double> p_weights;      // realize ∫_0^∞ p dp
  double epsilon = 0.0;
  double map_scale = 1.0;
  double p_scale = 1.0;

  int n_alpha() const { return static_cast<int>(alpha_nodes.size()); }
  int n_p() const { return static_cast<int>(p_nodes.size()); }
  void validate() const;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// α = map_scale·atanh(t); weights carry dα/(2π).
QuadratureGrid build_alpha_grid(int n_nodes, double map_scale);

// p = scale·e^x, trapezoid in x on [x_lo, x_hi]; weights carry p dp.
QuadratureGrid build_p_grid(int n_nodes, double scale, double x_lo = -12.0, double x_hi = 4.0);

GridPtr make_grid(int n_alpha, double map_scale, int n_p, double p_scale, double x_lo = -12.0, double x_hi = 4.0);

struct Kernel {
  CMatrix entries;  // (alpha_out, alpha_in)
  GridPtr grid;
  bool measure_absorbed = false;

  int size() const { return static_cast<int>(entries.rows()); }
  bool finite() const { return entries.allFinite(); }
};

Kernel identity_kernel(const GridPtr& g);
Kernel zero_kernel(const GridPtr& g);
Kernel diagonal_kernel(const GridPtr& g, const CVector& values);

// Folds the quadrature weights into the column index: entries·diag(w).
Kernel absorb_measure(const Kernel& k);

// ∫ dα''/(2π) a(α',α'') b(α'',α)
Kernel kernel_product(const Kernel& a, const Kernel& b);

// ∑_i w_i k(α_i, α_i)
cd kernel_trace(const Kernel& k);

}  // namespace casimir
