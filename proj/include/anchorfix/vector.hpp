#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace anchorfix {

using Vector = std::vector<double>;

inline void require_same_size(const Vector& a, const Vector& b, const char* where) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

inline double dot(const Vector& a, const Vector& b) {
  require_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

// ||a - b|| without materializing the difference.
inline double norm_diff(const Vector& a, const Vector& b) {
  require_same_size(a, b, "norm_diff");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vector sub(const Vector& a, const Vector& b) {
  require_same_size(a, b, "sub");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector scaled(double c, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// lambda * u + (1 - lambda) * t, the anchored averaging step.
inline Vector anchored_combine(double lambda, const Vector& u, const Vector& t) {
  require_same_size(u, t, "anchored_combine");
  Vector r(u.size());
  const double w = 1.0 - lambda;
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = lambda * u[i] + w * t[i];
  return r;
}

inline bool all_finite(const Vector& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double norm1(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

}  // namespace anchorfix
