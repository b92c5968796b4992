#pragma once

#include "anchorfix/fixed_point_map.hpp"
#include "anchorfix/matrix.hpp"
#include "anchorfix/vector.hpp"

namespace anchorfix {

// Half-space {x : <a, x> >= beta}.
struct HalfSpace {
  Vector a;
  double beta = 0.0;
};

// Hyperplane {x : <a, x> = beta}.
struct Hyperplane {
  Vector a;
  double beta = 0.0;
};

// Metric projections. Points already inside a half-space are returned
// unchanged, bit for bit.
Vector project_halfspace(const Vector& x, const HalfSpace& h);
Vector project_hyperplane(const Vector& x, const Hyperplane& h);

FixedPointMap halfspace_projection_map(HalfSpace h);
FixedPointMap hyperplane_projection_map(Hyperplane h);

// x -> outer(inner(x)).
FixedPointMap compose(FixedPointMap outer, FixedPointMap inner);

// Componentwise sign(x_i) * max(|x_i| - theta, 0); the proximal map of
// theta * ||.||_1.
Vector soft_threshold(const Vector& x, double theta);

// One forward-backward step for 0.5 * ||A x - b||^2 + tau * ||x||_1:
// a gradient step of length gamma followed by soft thresholding at
// gamma * tau. Nonexpansive whenever 0 < gamma < 2 / ||A||^2.
struct ForwardBackwardMap {
  Matrix A;
  Vector b;
  double gamma = 0.0;
  double tau = 0.0;
};

Vector forward_backward(const Vector& x, const ForwardBackwardMap& fb);
FixedPointMap forward_backward_map(ForwardBackwardMap fb);

// Plane rotation by `angle` about the origin.
Vector rotation2d(const Vector& x, double angle);
FixedPointMap rotation_map(double angle);

// Mildly nonlinear 3-d map, nonexpansive with its fixed point at the origin.
// The linear part has spectrum {-54, -27, -18} and the saturating terms add
// at most 1/2, so the divisor 54.5 makes the Lipschitz constant exactly 1;
// one direction is neutrally stable, which makes the map a stress case for
// anchoring schedules.
Vector benchmark3(const Vector& x);
FixedPointMap benchmark3_map();

}  // namespace anchorfix
