#include "anchorfix/problems.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"

#include "anchorfix/operators.hpp"
#include "anchorfix/rng.hpp"

namespace anchorfix {

namespace {

// Substream salts; changing any of these changes every generated instance.
constexpr std::uint64_t kSaltEntries = 0;
constexpr std::uint64_t kSaltSupport = 1;
constexpr std::uint64_t kSaltValues = 2;
constexpr std::uint64_t kSaltPower = 3;

}  // namespace

LassoInstance generate_lasso(long m, long n, long K, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("generate_lasso: m and n must be positive");
  if (K < 1 || K > n) throw std::invalid_argument("generate_lasso: K must lie in [1, n]");

  LassoInstance inst;
  inst.m = m;
  inst.n = n;
  inst.K = K;
  inst.seed = seed;

  const auto mu = static_cast<std::size_t>(m);
  const auto nu = static_cast<std::size_t>(n);

  SeededRng entries(mix_seed(seed, kSaltEntries));
  inst.A = Matrix(mu, nu);
  for (double& v : inst.A.data()) v = entries.normal();

  // K distinct support positions via a partial Fisher-Yates pass.
  SeededRng support(mix_seed(seed, kSaltSupport));
  std::vector<std::size_t> idx(nu);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < static_cast<std::size_t>(K); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(support.uniform_index(nu - i));
    std::swap(idx[i], idx[j]);
  }

  SeededRng values(mix_seed(seed, kSaltValues));
  inst.x_true.assign(nu, 0.0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(K); ++i)
    inst.x_true[idx[i]] = values.uniform(-2.0, 2.0);

  inst.b = matvec(inst.A, inst.x_true);
  inst.gamma = estimate_step(inst.A, 100, mix_seed(seed, kSaltPower));
  inst.tau = 0.01 * max_abs(matvec_transpose(inst.A, inst.b));
  return inst;
}

double power_method_bound(const Matrix& A, long iterations, std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("power_method_bound: iterations must be positive");
  SeededRng rng(seed);
  Vector v = rng.normal_vector(A.cols());
  double vn = norm(v);
  if (vn == 0.0) throw std::runtime_error("power_method_bound: degenerate start");
  for (double& c : v) c /= vn;
  double lam = 0.0;
  for (long it = 0; it < iterations; ++it) {
    Vector w = matvec_transpose(A, matvec(A, v));
    lam = norm(w);
    if (lam == 0.0) return 0.0;  // A is the zero matrix
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / lam;
  }
  return lam;
}

double estimate_step(const Matrix& A, long iterations, std::uint64_t seed) {
  const double bound = power_method_bound(A, iterations, seed);
  if (!(bound > 0.0)) throw std::runtime_error("estimate_step: spectral bound is zero");
  return 1.0 / (1.01 * bound);
}

double relative_error(const Vector& x_hat, const Vector& x_true) {
  const double nt = norm(x_true);
  if (nt == 0.0) throw std::invalid_argument("relative_error: reference has zero norm");
  return norm_diff(x_hat, x_true) / nt;
}

double lasso_objective(const Vector& x, const LassoInstance& inst) {
  Vector r = matvec(inst.A, x);
  double q = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = r[i] - inst.b[i];
    q += d * d;
  }
  return 0.5 * q + inst.tau * norm1(x);
}

FixedPointMap lasso_map(const LassoInstance& inst) {
  return forward_backward_map({inst.A, inst.b, inst.gamma, inst.tau});
}

std::string lasso_header_json(const LassoInstance& inst) {
  nlohmann::json j;
  j["m"] = inst.m;
  j["n"] = inst.n;
  j["K"] = inst.K;
  j["seed"] = inst.seed;
  j["tau"] = inst.tau;
  j["gamma"] = inst.gamma;
  return j.dump(2);
}

LassoInstance lasso_from_header_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  LassoInstance inst = generate_lasso(j.at("m").get<long>(), j.at("n").get<long>(),
                                      j.at("K").get<long>(), j.at("seed").get<std::uint64_t>());
  inst.tau = j.at("tau").get<double>();
  inst.gamma = j.at("gamma").get<double>();
  return inst;
}

}  // namespace anchorfix
