#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>

#include "anchorfix/vector.hpp"

namespace anchorfix {

// A self-map of R^n together with its dimension. Evaluations are counted so
// drivers and tests can assert the one-evaluation-per-iteration budget.
class FixedPointMap {
 public:
  using EvalFn = std::function<Vector(const Vector&)>;

  FixedPointMap(std::size_t dimension, EvalFn evaluate)
      : dimension_(dimension), evaluate_(std::move(evaluate)) {
    if (dimension_ == 0) throw std::invalid_argument("FixedPointMap: zero dimension");
    if (!evaluate_) throw std::invalid_argument("FixedPointMap: empty evaluation function");
  }

  std::size_t dimension() const { return dimension_; }

  Vector operator()(const Vector& x) const {
    if (x.size() != dimension_)
      throw std::invalid_argument("FixedPointMap: input has dimension " +
                                  std::to_string(x.size()) + ", expected " +
                                  std::to_string(dimension_));
    ++evaluations_;
    Vector y = evaluate_(x);
    if (y.size() != dimension_)
      throw std::runtime_error("FixedPointMap: evaluation returned wrong dimension");
    return y;
  }

  long evaluation_count() const { return evaluations_; }

 private:
  std::size_t dimension_;
  EvalFn evaluate_;
  mutable long evaluations_ = 0;
};

}  // namespace anchorfix
