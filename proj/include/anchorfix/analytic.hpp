#pragma once

#include <limits>
#include <string>
#include <vector>

#include "anchorfix/fixed_point_map.hpp"
#include "anchorfix/trace.hpp"
#include "anchorfix/vector.hpp"

namespace anchorfix {

// ---------------------------------------------------------------------------
// Worked plane example: T projects onto the half-space {xi + eta >= 2} and
// then onto the line {eta = 2}, started from the origin with the adaptive
// schedule. From step 2 on the iterate stays inside the half-space, which
// collapses the recursion to
//   xi_k  = ((2 + eta_{k-1}) / 4) * xi_{k-1}
//   eta_k = 1 + eta_{k-1} / 2
// with xi_2 = 159/280, eta_2 = 53/35, and closed forms for the gap 2 - eta_k,
// the weight 1/(1 + phi_k), and the residual, all halving per step.
// ---------------------------------------------------------------------------

FixedPointMap worked_example_map();

struct WorkedExampleState {
  long k = 0;
  double xi = 0.0;
  double eta = 0.0;
  double phi_ratio = 0.0;  // phi_k / (1 + phi_k)
};

// Exact state at step k (k >= 2) via the collapsed recursion.
WorkedExampleState worked_example_closed_form(long k);

// Closed forms valid for k >= 3.
double worked_example_residual_closed(long k);
double worked_example_inv_one_plus_phi_closed(long k);

// First coordinate of the limit, an infinite product truncated once factors
// are within tol of 1 (relative truncation error below 2 * tol). The limit
// itself is (xi_star, 2).
double worked_example_limit(double tol);

// ---------------------------------------------------------------------------
// Run checkers. Each walks a trace, counts tolerance violations, and keeps
// the worst slack seen (negative slack means the inequality failed by that
// amount). Checkers that need iterates require a trace recorded with
// keep_vectors and thin == 1.
// ---------------------------------------------------------------------------

struct SlackViolation {
  long k = 0;
  double slack = 0.0;
  std::string what;
};

struct CheckReport {
  std::string name;
  long checked = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::vector<SlackViolation> violations;

  bool ok() const { return violations.empty(); }
};

// phi_k >= k up to 1e-9 relative slack, and
// ||x^k - Tx^k||^2 <= (2/phi_k) <x^k - Tx^k, x^0 - x^k> up to
// 1e-9 * max(||x^0||^2, both sides), for every logged step of an adaptive run.
CheckReport check_adaptive_bounds(const IterationTrace& trace);

// ||x^{k-1} - Tx^{k-1}||^2 = (2/(phi_k+1)) <x^{k-1} - Tx^{k-1}, x^0 - Tx^{k-1}>
// to 1e-10 relative, at every step whose phi was not clamped.
CheckReport check_identity_anchor(const IterationTrace& trace,
                                  const std::vector<long>& clamped_steps = {});

// Adaptive residual guarantee ||x^k - Tx^k|| <= (2/(phi_k+1)) ||x^0 - x_star||
// + 1e-9, and that this guarantee never exceeds the open-loop one
// 2 ||x^0 - x_star|| / (k+1). x_star must satisfy ||x_star - T x_star|| <= 1e-10.
CheckReport check_rate_bound(const IterationTrace& trace, const FixedPointMap& map,
                             const Vector& x_star);

// Open-loop alpha = 1 guarantee ||x^k - Tx^k|| <= 2 ||x^0 - x_star|| / (k+1)
// + 1e-9. Requires u = x^0.
CheckReport check_open_loop_bound(const IterationTrace& trace, const FixedPointMap& map,
                               const Vector& x_star);

// ||x^k - p|| <= ||x^0 - p|| within 1e-9 relative, for a fixed point p
// supplied as the run's reference (checked on the dist_to_ref column).
CheckReport check_boundedness(const IterationTrace& trace, const Vector& p);

// ---------------------------------------------------------------------------
// Algebraic identity behind the adaptive coefficient: for any vectors a, b, c
// of one dimension and any phi > 0,
//   phi ||a||^2 + 2 <a, b> + ||c||^2 - ||a + c||^2
//     = ((phi+1)/2) ||a||^2 - (2/(phi+1)) ||a + c - b||^2
//       + (2/(phi+1)) ||a + c - b - ((phi+1)/2) a||^2.
// Returns the two-sided evaluation gap.
// ---------------------------------------------------------------------------
double verify_identity_quadratic(const Vector& a, const Vector& b, const Vector& c, double phi);

// ---------------------------------------------------------------------------
// Limit diagnostic: along a run with step weights lambda_k, the quotient
//   (||x^k - z||^2 - ||T x^{k-1} - z||^2) / lambda_k
// tends to 2 <u - q, q - z>, where u is the anchor and q the limit. The sign
// of the target locates z relative to the halving hyperplane through q.
// ---------------------------------------------------------------------------

struct QuotientPoint {
  long k = 0;
  double quotient = 0.0;
};

struct QuotientReport {
  std::vector<QuotientPoint> points;
  double target = 0.0;
  int target_sign = 0;  // sign of the target; 0 when it is negligible
  double initial_magnitude = 0.0;
  double last_decade_mean = 0.0;  // mean quotient over k in [K/10, K]
};

QuotientReport quotient_diagnostic(const IterationTrace& trace, const Vector& z,
                                   const Vector& u, const Vector& q);

// ---------------------------------------------------------------------------
// Summability heuristic: partial sums of 1/(phi_k + 1) plus a log-log slope
// of phi_k against k over the last half of the records. Slopes above 1.5
// read as a summable schedule, below 1.1 as a divergent one.
// ---------------------------------------------------------------------------

enum class SummabilityVerdict { SummableLike, DivergentLike, Inconclusive };

const char* to_string(SummabilityVerdict v);

struct SummabilityReport {
  std::vector<double> partial_sums;
  double fitted_slope = 0.0;
  SummabilityVerdict verdict = SummabilityVerdict::Inconclusive;
};

SummabilityReport summability_estimate(const IterationTrace& trace);

}  // namespace anchorfix
