#include "anchorfix/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace anchorfix {

Vector project_halfspace(const Vector& x, const HalfSpace& h) {
  require_same_size(x, h.a, "project_halfspace");
  const double slack = dot(h.a, x) - h.beta;
  if (slack >= 0.0) return x;
  const double an2 = dot(h.a, h.a);
  if (an2 == 0.0) throw std::invalid_argument("project_halfspace: zero normal");
  Vector y = x;
  const double c = -slack / an2;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * h.a[i];
  return y;
}

Vector project_hyperplane(const Vector& x, const Hyperplane& h) {
  require_same_size(x, h.a, "project_hyperplane");
  const double an2 = dot(h.a, h.a);
  if (an2 == 0.0) throw std::invalid_argument("project_hyperplane: zero normal");
  const double c = (h.beta - dot(h.a, x)) / an2;
  Vector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * h.a[i];
  return y;
}

FixedPointMap halfspace_projection_map(HalfSpace h) {
  const std::size_t dim = h.a.size();
  return FixedPointMap(dim, [h = std::move(h)](const Vector& x) { return project_halfspace(x, h); });
}

FixedPointMap hyperplane_projection_map(Hyperplane h) {
  const std::size_t dim = h.a.size();
  return FixedPointMap(dim, [h = std::move(h)](const Vector& x) { return project_hyperplane(x, h); });
}

FixedPointMap compose(FixedPointMap outer, FixedPointMap inner) {
  if (outer.dimension() != inner.dimension())
    throw std::invalid_argument("compose: dimension mismatch");
  const std::size_t dim = outer.dimension();
  return FixedPointMap(dim, [outer = std::move(outer), inner = std::move(inner)](const Vector& x) {
    return outer(inner(x));
  });
}

Vector soft_threshold(const Vector& x, double theta) {
  if (theta < 0.0) throw std::invalid_argument("soft_threshold: negative threshold");
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]) - theta;
    y[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
  }
  return y;
}

Vector forward_backward(const Vector& x, const ForwardBackwardMap& fb) {
  Vector r = matvec(fb.A, x);
  require_same_size(r, fb.b, "forward_backward");
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= fb.b[i];
  Vector g = matvec_transpose(fb.A, r);
  Vector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= fb.gamma * g[i];
  return soft_threshold(y, fb.gamma * fb.tau);
}

FixedPointMap forward_backward_map(ForwardBackwardMap fb) {
  if (fb.A.rows() != fb.b.size())
    throw std::invalid_argument("forward_backward_map: A and b are inconsistent");
  if (!(fb.gamma > 0.0)) throw std::invalid_argument("forward_backward_map: gamma must be positive");
  if (fb.tau < 0.0) throw std::invalid_argument("forward_backward_map: tau must be nonnegative");
  const std::size_t dim = fb.A.cols();
  return FixedPointMap(dim, [fb = std::move(fb)](const Vector& x) { return forward_backward(x, fb); });
}

Vector rotation2d(const Vector& x, double angle) {
  if (x.size() != 2) throw std::invalid_argument("rotation2d: expected dimension 2");
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * x[0] - s * x[1], s * x[0] + c * x[1]};
}

FixedPointMap rotation_map(double angle) {
  return FixedPointMap(2, [angle](const Vector& x) { return rotation2d(x, angle); });
}

Vector benchmark3(const Vector& x) {
  if (x.size() != 3) throw std::invalid_argument("benchmark3: expected dimension 3");
  const double a = x[0], b = x[1], c = x[2];
  return {
      (-35.0 * a - std::sqrt(std::abs(a) + 1.0) - 10.0 * b + 14.0 * c + 1.0) / 54.5,
      (-10.0 * a - 26.0 * b - 0.5 * std::sin(b) + 4.0 * c) / 54.5,
      (14.0 * a + 4.0 * b - 38.0 * c - std::atan(0.5 * c)) / 54.5,
  };
}

FixedPointMap benchmark3_map() {
  return FixedPointMap(3, [](const Vector& x) { return benchmark3(x); });
}

}  // namespace anchorfix
