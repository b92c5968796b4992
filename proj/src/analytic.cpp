#include "anchorfix/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anchorfix/operators.hpp"
#include "anchorfix/schedules.hpp"
#include "anchorfix/trace.hpp"

namespace anchorfix {

FixedPointMap worked_example_map() {
  HalfSpace d{{1.0, 1.0}, 2.0};
  Hyperplane h{{0.0, 1.0}, 2.0};
  return compose(hyperplane_projection_map(h), halfspace_projection_map(d));
}

WorkedExampleState worked_example_closed_form(long k) {
  if (k < 2) throw std::invalid_argument("worked_example_closed_form: k must be at least 2");
  WorkedExampleState s;
  s.k = 2;
  s.xi = 159.0 / 280.0;
  s.eta = 53.0 / 35.0;
  while (s.k < k) {
    s.xi *= (2.0 + s.eta) / 4.0;
    s.eta = 1.0 + s.eta / 2.0;
    ++s.k;
  }
  // At step k the next weight is (2 - eta_k)/4, so phi_{k+1}/(1 + phi_{k+1})
  // equals (2 + eta_k)/4; stored for the state that produced this iterate.
  s.phi_ratio = (2.0 + s.eta) / 4.0;
  return s;
}

double worked_example_residual_closed(long k) {
  if (k < 3) throw std::invalid_argument("worked_example_residual_closed: k must be at least 3");
  // residual_k = (17/35) / 2^{k-2}: the gap 2 - eta_k halves each step from
  // eta_2 = 53/35.
  return (17.0 / 35.0) * std::ldexp(1.0, static_cast<int>(-(k - 2)));
}

double worked_example_inv_one_plus_phi_closed(long k) {
  if (k < 3) throw std::invalid_argument("worked_example_inv_one_plus_phi_closed: k must be at least 3");
  // 1/(1 + phi_k) = (2 - eta_{k-1})/4 = (17/140) / 2^{k-3}.
  return (17.0 / 140.0) * std::ldexp(1.0, static_cast<int>(-(k - 3)));
}

double worked_example_limit(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("worked_example_limit: tol must be positive");
  // xi_star = xi_2 * prod_{j>=2} (1 - g_j/4) with g_j = (17/35)/2^{j-2}.
  // Factors truncated once g_j/4 < tol; the omitted tail multiplies the
  // product by at least 1 - 2*tol (geometric sum of the omitted g_j/4).
  double xi = 159.0 / 280.0;
  double g = 17.0 / 35.0;
  while (g / 4.0 >= tol) {
    xi *= 1.0 - g / 4.0;
    g /= 2.0;
  }
  return xi;
}

namespace {

const std::vector<StepVectors>& require_steps(const IterationTrace& trace, const char* who) {
  if (trace.steps.size() != static_cast<std::size_t>(trace.iterations) + 1)
    throw std::invalid_argument(std::string(who) +
                                ": trace must be recorded with keep_vectors and thin == 1");
  return trace.steps;
}

void note(CheckReport& rep, long k, double slack, const std::string& what) {
  ++rep.checked;
  if (slack < rep.worst_slack) rep.worst_slack = slack;
  if (slack < 0.0) rep.violations.push_back({k, slack, what});
}

}  // namespace

CheckReport check_adaptive_bounds(const IterationTrace& trace) {
  if (trace.schedule != ScheduleKind::Adaptive)
    throw std::invalid_argument("check_adaptive_bounds: adaptive trace required");
  const auto& steps = require_steps(trace, "check_adaptive_bounds");
  CheckReport rep;
  rep.name = "coefficient growth and residual inequality";
  const double x0n2 = dot(trace.x0, trace.x0);
  for (const auto& rec : trace.records) {
    const long k = rec.k;
    const double phi = rec.parameter;
    note(rep, k, phi - static_cast<double>(k) + 1e-9 * static_cast<double>(k), "phi_k >= k");

    const Vector& xk = steps[static_cast<std::size_t>(k)].x;
    const Vector& tk = steps[static_cast<std::size_t>(k)].t;
    double lhs = 0.0, inner = 0.0;
    for (std::size_t i = 0; i < xk.size(); ++i) {
      const double r = xk[i] - tk[i];
      lhs += r * r;
      inner += r * (trace.x0[i] - xk[i]);
    }
    const double rhs = (2.0 / phi) * inner;
    const double eps = 1e-9 * std::max({x0n2, lhs, std::abs(rhs)});
    note(rep, k, rhs - lhs + eps, "residual^2 <= (2/phi_k) <r, x0 - x^k>");
  }
  return rep;
}

CheckReport check_identity_anchor(const IterationTrace& trace,
                                  const std::vector<long>& clamped_steps) {
  if (trace.schedule != ScheduleKind::Adaptive)
    throw std::invalid_argument("check_identity_anchor: adaptive trace required");
  const auto& steps = require_steps(trace, "check_identity_anchor");
  CheckReport rep;
  rep.name = "anchor identity";
  for (const auto& rec : trace.records) {
    const long k = rec.k;
    bool clamped = false;
    for (long c : clamped_steps) clamped = clamped || c == k;
    if (clamped) continue;
    const Vector& xp = steps[static_cast<std::size_t>(k - 1)].x;
    const Vector& tp = steps[static_cast<std::size_t>(k - 1)].t;
    double lhs = 0.0, inner = 0.0;
    for (std::size_t i = 0; i < xp.size(); ++i) {
      const double r = xp[i] - tp[i];
      lhs += r * r;
      inner += r * (trace.x0[i] - tp[i]);
    }
    const double rhs = (2.0 / (rec.parameter + 1.0)) * inner;
    const double scale = std::max(lhs, std::abs(rhs));
    note(rep, k, 1e-10 * scale - std::abs(lhs - rhs), "residual^2 == (2/(phi_k+1)) <r, x0 - Tx>");
  }
  return rep;
}

CheckReport check_rate_bound(const IterationTrace& trace, const FixedPointMap& map,
                             const Vector& x_star) {
  if (trace.schedule != ScheduleKind::Adaptive)
    throw std::invalid_argument("check_rate_bound: adaptive trace required");
  if (norm_diff(x_star, map(x_star)) > 1e-10)
    throw std::invalid_argument("check_rate_bound: x_star is not a fixed point to 1e-10");
  CheckReport rep;
  rep.name = "adaptive residual guarantee";
  const double dist0 = norm_diff(trace.x0, x_star);
  for (const auto& rec : trace.records) {
    const double bound = 2.0 * dist0 / (rec.parameter + 1.0);
    note(rep, rec.k, bound + 1e-9 - rec.residual, "residual <= 2 d0 / (phi_k + 1)");
    const double open_loop = open_loop_bound(rec.k, dist0);
    note(rep, rec.k, open_loop * (1.0 + 1e-12) - bound, "adaptive bound <= open-loop bound");
  }
  return rep;
}

CheckReport check_open_loop_bound(const IterationTrace& trace, const FixedPointMap& map,
                               const Vector& x_star) {
  if (norm_diff(x_star, map(x_star)) > 1e-10)
    throw std::invalid_argument("check_open_loop_bound: x_star is not a fixed point to 1e-10");
  CheckReport rep;
  rep.name = "open-loop residual guarantee";
  const double dist0 = norm_diff(trace.x0, x_star);
  for (const auto& rec : trace.records)
    note(rep, rec.k, open_loop_bound(rec.k, dist0) + 1e-9 - rec.residual, "residual <= 2 d0 / (k+1)");
  return rep;
}

CheckReport check_boundedness(const IterationTrace& trace, const Vector& p) {
  CheckReport rep;
  rep.name = "iterates stay in the initial ball";
  const double dist0 = norm_diff(trace.x0, p);
  for (const auto& rec : trace.records) {
    if (!rec.dist_to_ref)
      throw std::invalid_argument("check_boundedness: trace lacks the dist_to_ref column");
    note(rep, rec.k, dist0 * (1.0 + 1e-9) - *rec.dist_to_ref, "||x^k - p|| <= ||x0 - p||");
  }
  return rep;
}

double verify_identity_quadratic(const Vector& a, const Vector& b, const Vector& c, double phi) {
  require_same_size(a, b, "verify_identity_quadratic");
  require_same_size(a, c, "verify_identity_quadratic");
  if (!(phi > 0.0)) throw std::invalid_argument("verify_identity_quadratic: phi must be positive");
  // Extended precision internally: with phi up to 1e6 the cancellation between
  // the two evaluations leaves double-precision round-off right at the
  // comparison tolerance, while 80-bit accumulation keeps orders of margin.
  const std::size_t n = a.size();
  const long double s = (static_cast<long double>(phi) + 1.0L) / 2.0L;
  long double aa = 0.0L, ab = 0.0L, cc = 0.0L, acac = 0.0L, ww = 0.0L, wsws = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double ai = a[i], bi = b[i], ci = c[i];
    const long double ac = ai + ci;
    const long double w = ac - bi;
    const long double ws = w - s * ai;
    aa += ai * ai;
    ab += ai * bi;
    cc += ci * ci;
    acac += ac * ac;
    ww += w * w;
    wsws += ws * ws;
  }
  const long double lhs = static_cast<long double>(phi) * aa + 2.0L * ab + cc - acac;
  const long double rhs = s * aa - ww / s + wsws / s;
  return static_cast<double>(std::abs(lhs - rhs));
}

QuotientReport quotient_diagnostic(const IterationTrace& trace, const Vector& z,
                                   const Vector& u, const Vector& q) {
  const auto& steps = require_steps(trace, "quotient_diagnostic");
  require_same_size(z, trace.x0, "quotient_diagnostic");
  QuotientReport rep;
  double tdot = 0.0, nu = 0.0, nz = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double du = u[i] - q[i];
    const double dz = q[i] - z[i];
    tdot += du * dz;
    nu += du * du;
    nz += dz * dz;
  }
  rep.target = 2.0 * tdot;
  const double scale = 2.0 * std::sqrt(nu) * std::sqrt(nz);
  rep.target_sign = std::abs(rep.target) <= 1e-14 * scale ? 0 : (rep.target > 0.0 ? 1 : -1);

  rep.points.reserve(trace.records.size());
  for (const auto& rec : trace.records) {
    const long k = rec.k;
    const double lambda = lambda_equivalent(rec, trace.schedule);
    if (lambda == 0.0) throw std::invalid_argument("quotient_diagnostic: zero step weight");
    const Vector& xk = steps[static_cast<std::size_t>(k)].x;
    const Vector& tp = steps[static_cast<std::size_t>(k - 1)].t;
    const double dx = norm_diff(xk, z);
    const double dt = norm_diff(tp, z);
    rep.points.push_back({k, (dx * dx - dt * dt) / lambda});
  }
  if (!rep.points.empty()) {
    rep.initial_magnitude = std::abs(rep.points.front().quotient);
    const long kmax = rep.points.back().k;
    double sum = 0.0;
    long count = 0;
    for (const auto& p : rep.points)
      if (10 * p.k >= kmax) {
        sum += p.quotient;
        ++count;
      }
    rep.last_decade_mean = count > 0 ? sum / static_cast<double>(count) : 0.0;
  }
  return rep;
}

const char* to_string(SummabilityVerdict v) {
  switch (v) {
    case SummabilityVerdict::SummableLike: return "summable-like";
    case SummabilityVerdict::DivergentLike: return "divergent-like";
    case SummabilityVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SummabilityReport summability_estimate(const IterationTrace& trace) {
  SummabilityReport rep;
  rep.partial_sums.reserve(trace.records.size());
  double acc = 0.0;
  for (const auto& rec : trace.records) {
    acc += lambda_equivalent(rec, trace.schedule);
    rep.partial_sums.push_back(acc);
  }

  // Log-log fit of the schedule coefficient against k over the last half of
  // the records; geometric growth shows up as a slope well above any fixed
  // polynomial threshold.
  const std::size_t nrec = trace.records.size();
  std::size_t from = nrec / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long count = 0;
  for (std::size_t i = from; i < nrec; ++i) {
    const auto& rec = trace.records[i];
    const double lambda = lambda_equivalent(rec, trace.schedule);
    if (!(lambda > 0.0)) continue;
    const double phi = 1.0 / lambda - 1.0;
    if (!(phi > 0.0)) continue;
    const double lx = std::log(static_cast<double>(rec.k));
    const double ly = std::log(phi);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count >= 3) {
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    if (denom > 0.0) {
      rep.fitted_slope = (static_cast<double>(count) * sxy - sx * sy) / denom;
      if (rep.fitted_slope > 1.5)
        rep.verdict = SummabilityVerdict::SummableLike;
      else if (rep.fitted_slope < 1.1)
        rep.verdict = SummabilityVerdict::DivergentLike;
    }
  }
  return rep;
}

}  // namespace anchorfix
