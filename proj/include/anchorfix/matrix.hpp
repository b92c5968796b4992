#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "anchorfix/vector.hpp"

namespace anchorfix {

// Dense row-major matrix. Products accumulate left to right in index order;
// no compensated summation, so results are reproducible bit for bit.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Vector matvec(const Matrix& A, const Vector& x) {
  if (x.size() != A.cols()) throw std::invalid_argument("matvec: dimension mismatch");
  Vector y(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    const double* row = &A.data()[i * A.cols()];
    for (std::size_t j = 0; j < A.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

// y = A^T x, traversed row-wise so the row-major layout stays cache friendly.
inline Vector matvec_transpose(const Matrix& A, const Vector& x) {
  if (x.size() != A.rows()) throw std::invalid_argument("matvec_transpose: dimension mismatch");
  Vector y(A.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double xi = x[i];
    const double* row = &A.data()[i * A.cols()];
    for (std::size_t j = 0; j < A.cols(); ++j) y[j] += row[j] * xi;
  }
  return y;
}

}  // namespace anchorfix
