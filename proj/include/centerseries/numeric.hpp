#pragma once

// Small shared numeric helpers.

#include <cassert>
#include <cstddef>
#include <vector>

namespace centerseries {

// x^m for small integer m, by repeated multiplication (deterministic, cheap).
inline double ipow(double x, int m) {
  if (m < 0) return 1.0 / ipow(x, -m);
  double r = 1.0;
  while (m-- > 0) r *= x;
  return r;
}

// Neville polynomial extrapolation of (x_i, y_i) to x = 0. Values may be
// real or complex; nodes must be distinct.
template <class T>
T neville_at_zero(const std::vector<double>& x, std::vector<T> y) {
  assert(!x.empty() && x.size() == y.size());
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
  return y[0];
}

}  // namespace centerseries
