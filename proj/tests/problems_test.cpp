#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "anchorfix/problems.hpp"
#include "anchorfix/rng.hpp"

using namespace anchorfix;

TEST_CASE("instance generation is deterministic per seed") {
  const LassoInstance a = generate_lasso(20, 50, 4, 99);
  const LassoInstance b = generate_lasso(20, 50, 4, 99);
  const LassoInstance c = generate_lasso(20, 50, 4, 100);

  CHECK(a.A.data() == b.A.data());
  CHECK(a.b == b.b);
  CHECK(a.x_true == b.x_true);
  CHECK(a.tau == b.tau);
  CHECK(a.gamma == b.gamma);
  CHECK(a.A.data() != c.A.data());
}

TEST_CASE("planted signal has the requested support") {
  const LassoInstance inst = generate_lasso(30, 80, 7, 5);
  long nonzeros = 0;
  bool in_range = true;
  for (double v : inst.x_true)
    if (v != 0.0) {
      ++nonzeros;
      in_range = in_range && v >= -2.0 && v <= 2.0;
    }
  CHECK(nonzeros == 7);
  CHECK(in_range);
}

TEST_CASE("data vector is consistent with the planted signal") {
  const LassoInstance inst = generate_lasso(15, 40, 3, 11);
  const Vector expect = matvec(inst.A, inst.x_true);
  CHECK(norm_diff(expect, inst.b) == 0.0);
}

TEST_CASE("generation rejects bad shapes") {
  CHECK_THROWS_AS(generate_lasso(0, 10, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_lasso(10, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_lasso(10, 10, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_lasso(10, 10, 11, 1), std::invalid_argument);
}

TEST_CASE("power method finds a known spectral norm") {
  Matrix A(2, 2);
  A(0, 0) = 3.0;
  A(1, 1) = 1.0;
  const double bound = power_method_bound(A, 200, 7);
  CHECK(bound == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(estimate_step(A, 200, 7) == doctest::Approx(1.0 / (1.01 * 9.0)).epsilon(1e-10));

  Matrix Z(2, 2);
  CHECK(power_method_bound(Z, 10, 7) == 0.0);
  CHECK_THROWS_AS(estimate_step(Z, 10, 7), std::runtime_error);
  CHECK_THROWS_AS(power_method_bound(A, 0, 7), std::invalid_argument);
}

TEST_CASE("step length sits inside the nonexpansive range") {
  const LassoInstance inst = generate_lasso(25, 60, 5, 3);
  const double tight = power_method_bound(inst.A, 500, 12345);
  CHECK(inst.gamma > 0.0);
  CHECK(inst.gamma < 2.0 / tight);
}

TEST_CASE("relative error") {
  CHECK(relative_error({0.0, 4.0}, {3.0, 0.0}) == doctest::Approx(5.0 / 3.0));
  CHECK_THROWS_AS(relative_error({1.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("objective on a hand-checked point") {
  LassoInstance inst;
  inst.A = Matrix(2, 2);
  inst.A(0, 0) = 1.0;
  inst.A(1, 1) = 1.0;
  inst.b = {1.0, 0.0};
  inst.tau = 0.1;
  const double obj = lasso_objective({0.9, 0.0}, inst);
  CHECK(obj == doctest::Approx(0.5 * 0.01 + 0.1 * 0.9).epsilon(1e-15));
}

TEST_CASE("map dimension follows the instance") {
  const LassoInstance inst = generate_lasso(10, 24, 2, 8);
  FixedPointMap map = lasso_map(inst);
  CHECK(map.dimension() == 24);
}

TEST_CASE("header export and import") {
  LassoInstance inst = generate_lasso(12, 30, 3, 21);
  inst.tau = 0.5;     // overridden after generation, must survive the trip
  inst.gamma = 1e-3;
  const std::string header = lasso_header_json(inst);
  const LassoInstance back = lasso_from_header_json(header);

  CHECK(back.m == inst.m);
  CHECK(back.n == inst.n);
  CHECK(back.K == inst.K);
  CHECK(back.seed == inst.seed);
  CHECK(back.tau == inst.tau);
  CHECK(back.gamma == inst.gamma);
  CHECK(back.A.data() == inst.A.data());
  CHECK(back.x_true == inst.x_true);

  CHECK_THROWS(lasso_from_header_json("{\"m\": 2}"));
}
