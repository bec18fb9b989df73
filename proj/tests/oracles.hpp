#pragma once

// Reference computations used only by the tests. They share no code path
// with the library beyond its value types.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "theta4/char2.hpp"
#include "theta4/theta_eval.hpp"

namespace theta4::oracle {

/// Naive lattice sum over the origin-centred cube of half-width r, with r
/// doubled from 4 until two successive sums agree to 1e-13 relative.
inline std::complex<double> direct_theta(const Characteristic& c, const Point& z,
                                         const PeriodMatrix& tau) {
  const int g = tau.genus();
  const auto& t = tau.tau();
  auto box_sum = [&](int r) {
    std::complex<double> sum = 0.0;
    std::vector<int> m(g, -r);
    const std::complex<double> i_pi(0.0, std::numbers::pi);
    while (true) {
      std::vector<double> n(g);
      for (int j = 0; j < g; ++j) n[j] = m[j] + 0.5 * c.a1_bit(j);
      std::complex<double> phase = 0.0;
      for (int j = 0; j < g; ++j) {
        for (int k = 0; k < g; ++k) phase += n[j] * t(j, k) * n[k];
        phase += 2.0 * n[j] * (z[j] + 0.5 * c.a2_bit(j));
      }
      sum += std::exp(i_pi * phase);
      int j = 0;
      while (j < g && m[j] == r) m[j++] = -r;
      if (j == g) break;
      ++m[j];
    }
    return sum;
  };
  std::complex<double> prev = box_sum(4);
  for (int r = 8; r <= 64; r *= 2) {
    const std::complex<double> next = box_sum(r);
    if (std::abs(next - prev) <= 1e-13 * std::max(1.0, std::abs(next))) return next;
    prev = next;
  }
  throw std::runtime_error("direct_theta did not stabilise");
}

/// Solves A x = b over Q by Gauss-Jordan elimination.
inline std::vector<mpq_class> rational_solve(std::vector<std::vector<mpq_class>> a,
                                             std::vector<mpq_class> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

/// Vanishing even theta-nulls of diag(tau_1, ..., tau_g): the even g-fold
/// products of genus-1 characteristics with at least one odd factor.
inline int diagonal_vanishing_null_count(int g) {
  int count = 0;
  const int total = 1 << (2 * g);
  for (int code = 0; code < total; ++code) {
    int odd_factors = 0;
    for (int j = 0; j < g; ++j) {
      const int factor = (code >> (2 * j)) & 3;
      if (factor == 3) ++odd_factors;  // (1,1) is the odd genus-1 characteristic
    }
    if (odd_factors % 2 == 0 && odd_factors > 0) ++count;
  }
  return count;
}

}  // namespace theta4::oracle
