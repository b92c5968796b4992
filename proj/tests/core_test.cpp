#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "anchorfix/fixed_point_map.hpp"
#include "anchorfix/matrix.hpp"
#include "anchorfix/rng.hpp"
#include "anchorfix/vector.hpp"

using namespace anchorfix;

TEST_CASE("vector helpers") {
  const Vector a{1.0, 2.0, -3.0};
  const Vector b{0.5, -1.0, 2.0};
  CHECK(dot(a, b) == doctest::Approx(0.5 - 2.0 - 6.0));
  CHECK(norm(Vector{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(norm_diff(a, b) == doctest::Approx(norm(sub(a, b))));
  CHECK(norm1(a) == doctest::Approx(6.0));
  CHECK(max_abs(a) == doctest::Approx(3.0));
  CHECK(scaled(2.0, b) == Vector{1.0, -2.0, 4.0});
  CHECK_THROWS_AS(dot(a, Vector{1.0}), std::invalid_argument);
}

TEST_CASE("anchored_combine endpoints and midpoint") {
  const Vector u{1.0, 0.0};
  const Vector t{0.0, 2.0};
  CHECK(anchored_combine(1.0, u, t) == u);
  CHECK(anchored_combine(0.0, u, t) == t);
  const Vector mid = anchored_combine(0.5, u, t);
  CHECK(mid[0] == doctest::Approx(0.5));
  CHECK(mid[1] == doctest::Approx(1.0));
}

TEST_CASE("all_finite flags bad entries") {
  CHECK(all_finite(Vector{0.0, -1e308}));
  CHECK_FALSE(all_finite(Vector{0.0, std::nan("")}));
  CHECK_FALSE(all_finite(Vector{1.0 / 0.0}));
}

TEST_CASE("matrix products against hand results") {
  Matrix A(2, 3);
  A(0, 0) = 1.0; A(0, 1) = 2.0; A(0, 2) = 3.0;
  A(1, 0) = -1.0; A(1, 1) = 0.0; A(1, 2) = 4.0;
  const Vector x{1.0, -1.0, 2.0};
  const Vector y = matvec(A, x);
  CHECK(y == Vector{5.0, 7.0});
  const Vector z{2.0, 1.0};
  const Vector w = matvec_transpose(A, z);
  CHECK(w == Vector{1.0, 4.0, 10.0});
  CHECK_THROWS_AS(matvec(A, z), std::invalid_argument);
  CHECK_THROWS_AS(matvec_transpose(A, x), std::invalid_argument);
}

TEST_CASE("mix_seed separates substreams") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}

TEST_CASE("seeded rng is deterministic per seed") {
  SeededRng a(123), b(123), c(124);
  bool same = true, diff = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.uniform01();
    same = same && va == b.uniform01();
    diff = diff || va != c.uniform01();
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("uniform01 stays in range") {
  SeededRng rng(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal draws have the right first moments") {
  SeededRng rng(5);
  double s1 = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("uniform_index bounds and edge cases") {
  SeededRng rng(11);
  bool in_range = true;
  for (int i = 0; i < 10000; ++i) in_range = in_range && rng.uniform_index(7) < 7;
  CHECK(in_range);
  CHECK(rng.uniform_index(1) == 0);
  CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("fixed point map counts evaluations and validates dimensions") {
  FixedPointMap id(2, [](const Vector& x) { return x; });
  CHECK(id.dimension() == 2);
  CHECK(id.evaluation_count() == 0);
  id({1.0, 2.0});
  id({0.0, 0.0});
  CHECK(id.evaluation_count() == 2);
  CHECK_THROWS_AS(id({1.0}), std::invalid_argument);

  FixedPointMap bad(2, [](const Vector&) { return Vector{1.0}; });
  CHECK_THROWS_AS(bad({1.0, 2.0}), std::runtime_error);
  CHECK_THROWS_AS(FixedPointMap(0, [](const Vector& x) { return x; }), std::invalid_argument);
  CHECK_THROWS_AS(FixedPointMap(1, FixedPointMap::EvalFn{}), std::invalid_argument);
}
