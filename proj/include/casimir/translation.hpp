#pragma once

#include <Eigen/Dense>

#include "casimir/quadrature.hpp"

namespace casimir {

using Vec2 = Eigen::Vector2d;

struct FramePose {
  Vec2 origin = Vec2::Zero();
  double tilt = 0.0;  // decay-axis direction for legs leaving this frame
};

struct TranslationSpec {
  FramePose from;
  FramePose to;
  double p = 0.0;
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exp(−p Δ∥ cosh α − i p Δ⊥ sinh α) along axis θ, with Δ⊥ measured along rot90(axis).
CVector translation_values(double theta, const Vec2& delta, double p, const QuadratureGrid& g);

// d/dε of the exponent when delta moves by ε·v: −p (cos a, sin a)·v.
CVector translation_log_derivative(double theta, const Vec2& v, double p, const QuadratureGrid& g);

Kernel translation_kernel(const TranslationSpec& spec, const GridPtr& grid);

}  // namespace casimir
