#pragma once

// Test-side numerics, kept independent of the library's own formulas.

#include <cmath>
#include <functional>
#include <numbers>

namespace support {

// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double second_diff(const std::function<double(double)>& f, double x, double h = 1e-4) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline double gaussian(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace support

#include "nslit/model.hpp"

namespace support {

// Share of a field that is even under x -> -x on a grid symmetric about 0:
// sum |f(x) + f(-x)| / sum |2 f(x)|.
inline double even_part_fraction(const nslit::Field2D& f) {
  double even = 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < f.rows; ++r) {
    for (std::size_t k = 0; k < f.cols; ++k) {
      even += std::abs(f(r, k) + f(r, f.cols - 1 - k));
      total += std::abs(2.0 * f(r, k));
    }
  }
  return total > 0.0 ? even / total : 0.0;
}

}  // namespace support
