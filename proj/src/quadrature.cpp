#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace casimir {

void QuadratureGrid::validate() const {
  if (alpha_nodes.size() != alpha_weights.size() || p_nodes.size() != p_weights.size())
    throw GridError("grid: node/weight size mismatch");
  for (size_t i = 0; i < alpha_nodes.size(); ++i) {
    if (!(alpha_weights[i] > 0)) throw GridError("grid: non-positive alpha weight");
    if (i && !(alpha_nodes[i] > alpha_nodes[i - 1])) throw GridError("grid: alpha nodes not increasing");
    if (std::abs(alpha_nodes[i] + alpha_nodes[alpha_nodes.size() - 1 - i]) > 1e-12 * (1 + std::abs(alpha_nodes[i])))
      throw GridError("grid: alpha nodes not symmetric");
  }
  for (size_t i = 0; i < p_nodes.size(); ++i) {
    if (!(p_weights[i] > 0) || !(p_nodes[i] > 0)) throw GridError("grid: non-positive p node or weight");
    if (i && !(p_nodes[i] > p_nodes[i - 1])) throw GridError("grid: p nodes not increasing");
  }
  if (epsilon < 0) throw GridError("grid: negative epsilon");
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p1 = 1, p2 = 0;
    for (int j = 1; j <= n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

QuadratureGrid build_alpha_grid(int n_nodes, double map_scale) {
  if (n_nodes < 8 || n_nodes % 2) throw GridError("alpha grid: n_nodes must be even and >= 8");
  if (!(map_scale > 0)) throw GridError("alpha grid: map_scale must be positive");
  std::vector<double> t, wt;
  gauss_legendre(n_nodes, t, wt);
  QuadratureGrid g;
  g.map_scale = map_scale;
  g.alpha_nodes.resize(n_nodes);
  g.alpha_weights.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    g.alpha_nodes[i] = map_scale * std::atanh(t[i]);
    g.alpha_weights[i] = wt[i] * map_scale / (1.0 - t[i] * t[i]) / (2.0 * std::numbers::pi);
  }
  for (int i = 0; i < n_nodes / 2; ++i) {
    double a = 0.5 * (g.alpha_nodes[n_nodes - 1 - i] - g.alpha_nodes[i]);
    g.alpha_nodes[i] = -a;
    g.alpha_nodes[n_nodes - 1 - i] = a;
  }
  double min_gap = g.alpha_nodes[1] - g.alpha_nodes[0];
  for (int i = 1; i < n_nodes; ++i) min_gap = std::min(min_gap, g.alpha_nodes[i] - g.alpha_nodes[i - 1]);
  g.epsilon = 0.5 * min_gap;
  return g;
}

QuadratureGrid build_p_grid(int n_nodes, double scale, double x_lo, double x_hi) {
  if (n_nodes < 8) throw GridError("p grid: n_nodes must be >= 8");
  if (!(scale > 0)) throw GridError("p grid: scale must be positive");
  QuadratureGrid g;
  g.p_scale = scale;
  g.p_nodes.resize(n_nodes);
  g.p_weights.resize(n_nodes);
  const double h = (x_hi - x_lo) / (n_nodes - 1);
  for (int i = 0; i < n_nodes; ++i) {
    double p = scale * std::exp(x_lo + i * h);
    g.p_nodes[i] = p;
    g.p_weights[i] = h * p * p * ((i == 0 || i == n_nodes - 1) ? 0.5 : 1.0);
  }
  return g;
}

GridPtr make_grid(int n_alpha, double map_scale, int n_p, double p_scale, double x_lo, double x_hi) {
  auto a = build_alpha_grid(n_alpha, map_scale);
  auto p = build_p_grid(n_p, p_scale, x_lo, x_hi);
  a.p_nodes = std::move(p.p_nodes);
  a.p_weights = std::move(p.p_weights);
  a.p_scale = p_scale;
  a.validate();
  return std::make_shared<const QuadratureGrid>(std::move(a));
}

Kernel identity_kernel(const GridPtr& g) {
  CVector v(g->n_alpha());
  v.setOnes();
  return diagonal_kernel(g, v);
}

Kernel zero_kernel(const GridPtr& g) {
  return Kernel{CMatrix::Zero(g->n_alpha(), g->n_alpha()), g, false};
}

Kernel diagonal_kernel(const GridPtr& g, const CVector& values) {
  const int n = g->n_alpha();
  if (values.size() != n) throw GridError("diagonal kernel: size mismatch");
  Kernel k{CMatrix::Zero(n, n), g, false};
  for (int i = 0; i < n; ++i) k.entries(i, i) = values(i) / g->alpha_weights[i];
  return k;
}

Kernel absorb_measure(const Kernel& k) {
  if (k.measure_absorbed) return k;
  Kernel out = k;
  for (int j = 0; j < k.size(); ++j) out.entries.col(j) *= k.grid->alpha_weights[j];
  out.measure_absorbed = true;
  return out;
}

Kernel kernel_product(const Kernel& a, const Kernel& b) {
  if (a.grid != b.grid && (!a.grid || !b.grid || a.grid->alpha_nodes != b.grid->alpha_nodes))
    throw GridError("kernel_product: grid mismatch");
  if (a.size() != b.size()) throw GridError("kernel_product: dimension mismatch");
  Kernel bb = b;
  if (b.measure_absorbed) {
    for (int j = 0; j < b.size(); ++j) bb.entries.col(j) /= b.grid->alpha_weights[j];
  }
  Kernel aw = absorb_measure(a);
  Kernel out{aw.entries * bb.entries, a.grid, false};
  return out;
}

cd kernel_trace(const Kernel& k) {
  if (k.measure_absorbed) return k.entries.trace();
  cd s = 0;
  for (int i = 0; i < k.size(); ++i) s += k.grid->alpha_weights[i] * k.entries(i, i);
  return s;
}

}  // namespace casimir
