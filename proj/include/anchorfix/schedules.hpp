#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anchorfix/driver.hpp"
#include "anchorfix/fixed_point_map.hpp"
#include "anchorfix/trace.hpp"
#include "anchorfix/vector.hpp"

namespace anchorfix {

// Relative slack under which phi < k is attributed to round-off rather than
// counted as a clamping event. Exact arithmetic guarantees phi_k >= k, but on
// maps that realize the bound with equality the computed value sits within a
// few ulps of k on either side.
inline constexpr double kClampRelativeSlack = 1e-12;

// Anchoring coefficient phi = 2 <x - Tx, anchor - x> / ||x - Tx||^2 + 1.
// Returns nullopt when ||x - Tx||^2 is below the denominator guard, meaning
// x is a fixed point for every practical purpose and the caller must stop.
std::optional<double> adaptive_phi(const Vector& x_prev, const Vector& t_prev,
                                   const Vector& anchor);

struct ClampEvent {
  long k = 0;
  double phi_raw = 0.0;      // value before clamping to k
  double residual = 0.0;     // ||x^{k-1} - T x^{k-1}|| seen by the computation
};

// Anchored iteration whose step weight is recomputed each iteration from the
// current residual and the anchor; the anchor is the starting point. Records
// phi_k as the trace parameter and clamps phi_k up to k, counting every
// clamp that exceeds the round-off slack.
class AdaptiveSchedule final : public AnchoringSchedule {
 public:
  void begin(const Vector& x0) override;
  std::pair<Vector, double> step(long k, const Vector& x_prev, const Vector& t_prev) override;
  ScheduleKind kind() const override { return ScheduleKind::Adaptive; }
  std::string label() const override { return "adaptive"; }
  long clamp_count() const override { return static_cast<long>(clamps_.size()); }
  const std::vector<ClampEvent>& clamp_events() const { return clamps_; }

 private:
  Vector anchor_;
  std::vector<ClampEvent> clamps_;
};

// Open-loop weights lambda_k = 1/(k+1)^alpha with alpha in (0, 1]. The anchor
// defaults to the starting point; a distinct anchor may be supplied.
class OpenLoopSchedule final : public AnchoringSchedule {
 public:
  explicit OpenLoopSchedule(double alpha);
  OpenLoopSchedule(double alpha, Vector anchor);

  void begin(const Vector& x0) override;
  std::pair<Vector, double> step(long k, const Vector& x_prev, const Vector& t_prev) override;
  ScheduleKind kind() const override { return ScheduleKind::OpenLoop; }
  std::string label() const override;
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  Vector anchor_;
  bool anchor_fixed_;
};

// Plain x^k = T x^{k-1}; parameter column is 0. Included as a baseline and
// as a high-precision limit oracle on contractive maps.
class PicardSchedule final : public AnchoringSchedule {
 public:
  void begin(const Vector&) override {}
  std::pair<Vector, double> step(long, const Vector&, const Vector& t_prev) override {
    return {t_prev, 0.0};
  }
  ScheduleKind kind() const override { return ScheduleKind::Picard; }
  std::string label() const override { return "picard"; }
};

double open_loop_lambda(long k, double alpha);

// One open-loop step: lambda_k * u + (1 - lambda_k) * t_prev.
Vector open_loop_step(const Vector& t_prev, const Vector& u, double alpha, long k);

// Residual guarantee of the best open-loop schedule: 2 * dist0 / (k + 1).
double open_loop_bound(long k, double dist0);

// State-passing form of one adaptive iteration, for callers that do not use
// the driver. `t` must hold the image of `x`; the map is evaluated once to
// refresh it for the returned state.
struct AdaptiveStepState {
  Vector x;
  Vector t;
  Vector anchor;
  long k = 1;  // index of the step that step() will produce next
};

struct AdaptiveStepOutcome {
  bool at_fixed_point = false;
  double phi = 0.0;
  Vector x_next;
  AdaptiveStepState state;
};

AdaptiveStepOutcome adaptive_step(const AdaptiveStepState& s, const FixedPointMap& map);

}  // namespace anchorfix
