#pragma once

#include <string>
#include <utility>

#include "anchorfix/fixed_point_map.hpp"
#include "anchorfix/trace.hpp"
#include "anchorfix/vector.hpp"

namespace anchorfix {

// Squared-norm guard below which an iterate is treated as an exact fixed
// point. Keeps the adaptive coefficient away from a vanishing denominator.
inline constexpr double kDenominatorGuard = 1e-28;

// Strategy producing iterate k from the previous iterate and its image.
// step() is called only after begin() and only while the previous residual is
// above the denominator guard. It must not evaluate the map; the driver owns
// the single evaluation per iteration.
class AnchoringSchedule {
 public:
  virtual ~AnchoringSchedule() = default;

  virtual void begin(const Vector& x0) = 0;

  // Returns (x^k, recorded parameter) from x^{k-1} and T x^{k-1}.
  virtual std::pair<Vector, double> step(long k, const Vector& x_prev, const Vector& t_prev) = 0;

  virtual ScheduleKind kind() const = 0;
  virtual std::string label() const = 0;
  virtual long clamp_count() const { return 0; }
};

// Runs x^k = schedule(k, x^{k-1}, T x^{k-1}) until the residual ||x - Tx||
// falls below the tolerance, the iterate is an exact fixed point, or the
// iteration budget is exhausted. Exactly one map evaluation per iteration
// plus one for the starting point.
IterationTrace run_iteration(const FixedPointMap& map, const Vector& x0,
                             AnchoringSchedule& schedule, const StopRule& stop,
                             const RunOptions& opts = {});

}  // namespace anchorfix
