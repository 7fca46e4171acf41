#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casimir/diagrams.hpp"
#include "casimir/scattering.hpp"
#include "casimir/translation.hpp"

namespace casimir {

enum class Dimension { TwoD, TwoAndHalfD };

// Half-plate: origin = edge, tilt = direction into the plate.
// Infinite plate: origin on the line, tilt = line direction.
// Needle: origin = centre, tilt = long-axis direction.
struct SceneObject {
  ScattererDescriptor desc;
  FramePose pose;
};

struct Scene {
  std::vector<SceneObject> objects;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  Dimension dim = Dimension::TwoAndHalfD;
  int threads = 1;

  int size() const { return static_cast<int>(objects.size()); }
  void validate() const;
};

// Interval of admissible decay-axis directions for a leg src -> dst.
struct AxisCone {
  double lo, hi, axis;
};
AxisCone leg_cone(const Scene& s, int src, int dst, double margin = 0.35);

// Per-vertex channel inferred from which side of the plate the legs lie, e.g. "3:RL".
std::string vertex_channels(const Scene& s, const Diagram& d);

struct Perturbation {
  int object = 0;  // 1-based
  Vec2 direction = Vec2::Zero();
};

struct DiagramValue {
  double energy = 0;       // −S·pref·∫ Re tr
  double imag = 0;         // same with Im tr
  double d1 = 0, d2 = 0;   // first derivatives w.r.t. perturbations
  double d12 = 0;          // mixed second derivative
};

// Legs follow the diagram traversal. axes overrides the cone choice.
DiagramValue diagram_value(const Scene& s, const Diagram& d, const QuadratureGrid& g, double bc_s,
                           const std::vector<Perturbation>& perturb = {},
                           const std::vector<double>* axes = nullptr);

std::vector<double> diagram_axes(const Scene& s, const Diagram& d);

// EM in 2.5D sums D and N; in 2D EM2D is Neumann.
double diagram_energy(const Scene& s, const Diagram& d, const QuadratureGrid& g);

struct EnergyBreakdown {
  std::map<std::string, double> per_diagram;
  std::map<std::string, std::string> channels;
  std::map<int, double> by_order;
  double total = 0;
  double truncation_estimate = 0;
  double max_imag_ratio = 0;
  int n_alpha = 0, n_p = 0;
  double map_scale = 0, p_scale = 0;
};

EnergyBreakdown reflection_series(const Scene& s, int n_max, const QuadratureGrid& g);
EnergyBreakdown evaluate_diagrams(const Scene& s, const std::vector<Diagram>& ds, const QuadratureGrid& g);

enum class ForceMethod { AnalyticDerivative, CentralDifference };

struct ForceResult {
  double value = 0;
  ForceMethod method = ForceMethod::AnalyticDerivative;
  double cross_check_delta = 0;
  double other_value = 0;
};

// −dE/dε for moving_object displaced by ε·direction, summed over ds.
ForceResult force(const Scene& s, const std::vector<Diagram>& ds, int moving_object, const Vec2& direction,
                  const QuadratureGrid& g, ForceMethod method = ForceMethod::AnalyticDerivative,
                  bool cross_check = true);

// −∂²E/∂ε1∂ε2 with ε1 moving o1 along v1 and ε2 moving o2 along v2.
double mixed_derivative(const Scene& s, const std::vector<Diagram>& ds, const Perturbation& a, const Perturbation& b,
                        const QuadratureGrid& g);

// I₁₂ = −∂d1 ∂d2 E where d1, d2 move objects 1 and 2 away along dir1, dir2.
double interaction_I12(const Scene& s, const std::vector<Diagram>& ds, const Vec2& dir1, const Vec2& dir2,
                       const QuadratureGrid& g);

// Parallel plates at separation d, per unit length (D_dim = 2) or area (D_dim = 3).
// n_max = 0 resums all orders via −ln(1 − x).
double parallel_plate_quadrature(int D_dim, double d, BoundaryCondition bc, const QuadratureGrid& g, int n_max = 0);
double parallel_plate_order_quadrature(int D_dim, double d, BoundaryCondition bc, const QuadratureGrid& g, int n);

}  // namespace casimir
