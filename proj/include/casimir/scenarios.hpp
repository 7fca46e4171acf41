#pragma once

#include <string>
#include <vector>

#include "casimir/assembly.hpp"
#include "casimir/closedforms.hpp"

namespace casimir {

struct SweepSpec {
  std::string param;  // empty: single point
  double lo = 0, hi = 0;
  int steps = 1;
  std::vector<double> values() const;
};

struct ScenarioConfig {
  std::string scenario_id = "two_halfplates";
  // parallel_plates
  int dim = 3;
  double d = 1.0;  // plate gap, or half-gap for gap_repulsion
  // two_halfplates / edge_needle distance
  double D = 1.0;
  double phi1 = 0.7853981633974483, phi2 = 0.7853981633974483;
  // three_halfplates / blocking / gap_repulsion
  double h = 1.0, d1 = 1.0, d2 = 1.0;
  // edge_needle
  double phi0 = 0.5, theta0 = 0.0;
  double t00 = 0.0, txx = 0.0, tyy = 1.0;
  std::string needle = "vertical";  // vertical | horizontal | circle
  double L = 1.0;

  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  SweepSpec sweep;
  int n_max = 2;
  int grid_alpha = 0, grid_p = 0;  // 0: scenario default
  double map_scale = 0;
  int threads = 1;
  bool allow_continuation = false;
  bool cross_check = false;

  void validate() const;
};

struct ScenarioBuild {
  Scene scene;
  std::vector<Diagram> diagrams;  // full set up to n_max
  std::vector<Diagram> leading;   // leading-order subset
  std::string quantity;           // energy | force | I12
  std::vector<std::string> notes;
};

struct CurveOutput {
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
  int n_diagram_columns = 0;  // per-diagram columns start at index 2
  bool error = false;
  std::string error_message;
};

ScenarioBuild build(const ScenarioConfig& c);
CurveOutput run(const ScenarioConfig& c);

GridPtr scenario_grid(const ScenarioConfig& c, const Scene& s);

struct FieldSample {
  double phi0, theta0;
  Vec2 position, force;  // force normalized within its φ0 group
  double magnitude;
};

// Needle at distance D from an edge whose half-line runs along +x.
std::vector<FieldSample> force_direction_field(const ScenarioConfig& c, const std::vector<double>& phi0s,
                                               const std::vector<double>& theta0s);
// Unnormalized −∇E of E00 + Exx + Eyy at needle position, fixed orientation.
Vec2 needle_edge_force(double phi0, double theta0, double D, double t00, double txx, double tyy);

}  // namespace casimir
