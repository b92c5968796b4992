#include "anchorfix/schedules.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace anchorfix {

std::optional<double> adaptive_phi(const Vector& x_prev, const Vector& t_prev,
                                   const Vector& anchor) {
  require_same_size(x_prev, t_prev, "adaptive_phi");
  require_same_size(x_prev, anchor, "adaptive_phi");
  double den = 0.0, num = 0.0;
  for (std::size_t i = 0; i < x_prev.size(); ++i) {
    const double r = x_prev[i] - t_prev[i];
    den += r * r;
    num += r * (anchor[i] - x_prev[i]);
  }
  if (den < kDenominatorGuard) return std::nullopt;
  return 2.0 * num / den + 1.0;
}

void AdaptiveSchedule::begin(const Vector& x0) {
  anchor_ = x0;
  clamps_.clear();
}

std::pair<Vector, double> AdaptiveSchedule::step(long k, const Vector& x_prev,
                                                 const Vector& t_prev) {
  auto phi_raw = adaptive_phi(x_prev, t_prev, anchor_);
  if (!phi_raw)
    throw std::logic_error("AdaptiveSchedule::step called at a fixed point; the driver stops first");
  double phi = *phi_raw;
  const double kd = static_cast<double>(k);
  if (phi < kd) {
    if (phi < kd * (1.0 - kClampRelativeSlack))
      clamps_.push_back({k, phi, norm_diff(x_prev, t_prev)});
    phi = kd;
  }
  const double lambda = 1.0 / (phi + 1.0);
  return {anchored_combine(lambda, anchor_, t_prev), phi};
}

OpenLoopSchedule::OpenLoopSchedule(double alpha) : alpha_(alpha), anchor_fixed_(false) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("OpenLoopSchedule: alpha must lie in (0, 1]");
}

OpenLoopSchedule::OpenLoopSchedule(double alpha, Vector anchor)
    : alpha_(alpha), anchor_(std::move(anchor)), anchor_fixed_(true) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("OpenLoopSchedule: alpha must lie in (0, 1]");
}

void OpenLoopSchedule::begin(const Vector& x0) {
  if (!anchor_fixed_) anchor_ = x0;
  if (anchor_.size() != x0.size())
    throw std::invalid_argument("OpenLoopSchedule: anchor dimension mismatch");
}

std::pair<Vector, double> OpenLoopSchedule::step(long k, const Vector& /*x_prev*/,
                                                  const Vector& t_prev) {
  const double lambda = open_loop_lambda(k, alpha_);
  return {anchored_combine(lambda, anchor_, t_prev), lambda};
}

std::string OpenLoopSchedule::label() const {
  return alpha_ == 1.0 ? std::string("open_loop") : "open_loop(alpha=" + std::to_string(alpha_) + ")";
}

double open_loop_lambda(long k, double alpha) {
  return 1.0 / std::pow(static_cast<double>(k) + 1.0, alpha);
}

Vector open_loop_step(const Vector& t_prev, const Vector& u, double alpha, long k) {
  return anchored_combine(open_loop_lambda(k, alpha), u, t_prev);
}

double open_loop_bound(long k, double dist0) {
  return 2.0 * dist0 / (static_cast<double>(k) + 1.0);
}

AdaptiveStepOutcome adaptive_step(const AdaptiveStepState& s, const FixedPointMap& map) {
  AdaptiveStepOutcome out;
  auto phi_raw = adaptive_phi(s.x, s.t, s.anchor);
  if (!phi_raw) {
    out.at_fixed_point = true;
    out.state = s;
    return out;
  }
  double phi = *phi_raw;
  const double kd = static_cast<double>(s.k);
  if (phi < kd) phi = kd;
  out.phi = phi;
  out.x_next = anchored_combine(1.0 / (phi + 1.0), s.anchor, s.t);
  out.state.x = out.x_next;
  out.state.t = map(out.x_next);
  out.state.anchor = s.anchor;
  out.state.k = s.k + 1;
  return out;
}

}  // namespace anchorfix
