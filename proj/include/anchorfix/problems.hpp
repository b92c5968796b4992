#pragma once

#include <cstdint>
#include <string>

#include "anchorfix/fixed_point_map.hpp"
#include "anchorfix/matrix.hpp"
#include "anchorfix/vector.hpp"

namespace anchorfix {

// Sparse recovery instance: A has i.i.d. standard normal entries, x_true has
// K nonzero entries uniform on [-2, 2] at uniformly chosen positions, and
// b = A x_true. tau and gamma are filled with the defaults below but can be
// overridden after generation.
struct LassoInstance {
  Matrix A;
  Vector b;
  Vector x_true;
  double tau = 0.0;
  double gamma = 0.0;
  long m = 0;
  long n = 0;
  long K = 0;
  std::uint64_t seed = 0;
};

// Deterministic in (m, n, K, seed). Defaults: gamma from estimate_step on a
// substream of seed, tau = 0.01 * max_i |(A^T b)_i|.
LassoInstance generate_lasso(long m, long n, long K, std::uint64_t seed);

// Largest eigenvalue of A^T A by the power method (seeded start, fixed
// iteration count). Underestimates the true value, hence the safety margin
// in estimate_step.
double power_method_bound(const Matrix& A, long iterations, std::uint64_t seed);

// Step length gamma = 1 / (1.01 * power_method_bound(A)); the margin keeps
// gamma below 2 / ||A||^2 under estimation error.
double estimate_step(const Matrix& A, long iterations, std::uint64_t seed);

// ||x_hat - x_true|| / ||x_true||.
double relative_error(const Vector& x_hat, const Vector& x_true);

double lasso_objective(const Vector& x, const LassoInstance& inst);

FixedPointMap lasso_map(const LassoInstance& inst);

// Instance header as JSON: m, n, K, seed, tau, gamma. Matrices are never
// serialized; import regenerates them from the seed and then applies the
// header's tau and gamma.
std::string lasso_header_json(const LassoInstance& inst);
LassoInstance lasso_from_header_json(const std::string& text);

struct RunSummary {
  std::string schedule_label;
  long iterations = 0;
  double wall_seconds = 0.0;
  double final_residual = 0.0;
  double err = 0.0;  // relative_error against x_true when available
  bool converged = false;
};

}  // namespace anchorfix
