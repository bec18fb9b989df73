#pragma once

// Numerical checks of Riemann's quartic addition theorem
//
//   theta[a](z)^4 = 2^{-g} sum_b <a, b> theta[b](0)^3 theta[b](2z)
//
// (sum over all 2^{2g} characteristics b) and of its inversion over even
// characteristics
//
//   2^g theta[c](0)^3 theta[c](2z)
//       = -2^g theta[c](z)^4 + 2 sum_{a even} <a, c> theta[a](z)^4.

#include <optional>
#include <vector>

#include "theta4/mmatrix.hpp"
#include "theta4/theta_eval.hpp"

namespace theta4 {

struct IdentityResidual {
  Complex lhs;
  Complex rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1e-30)
  // Largest modulus among lhs, rhs and the individual summands. When an
  // identity degenerates to 0 = 0 (a vanishing theta-null) rel_residual
  // compares two round-off values; abs_residual / term_scale does not.
  double term_scale = 0.0;
  double scaled_residual = 0.0;
  Characteristic characteristic;
  Point z;
  TruncationPolicy policy;
};

IdentityResidual make_residual(Complex lhs, Complex rhs, double term_scale,
                               const Characteristic& c, const Point& z,
                               const TruncationPolicy& policy);

/// Evaluates both sides of the quartic relation for c (even or odd). When
/// suppress_null is set, theta[suppress_null](0) is replaced by zero in the
/// right-hand side; used to confirm the check is not vacuous.
IdentityResidual riemann_quartic_check(const Characteristic& c, const Point& z,
                                       const PeriodMatrix& tau,
                                       const TruncationPolicy& policy = {},
                                       std::optional<Characteristic> suppress_null = {});

/// Both sides of the inversion display. c must be even. suppress_null zeroes
/// that theta-null on the left-hand side.
IdentityResidual inversion_check(const Characteristic& c, const Point& z,
                                 const PeriodMatrix& tau, const TruncationPolicy& policy = {},
                                 std::optional<Characteristic> suppress_null = {});

/// Exact table expressing theta[c](0)^3 theta[c](2z) through the fourth
/// powers theta[a](z)^4 (rows c, columns a, both even and canonical):
/// (2M - 2^g I) / 2^g. Requires g <= 4.
RationalMatrix derive_inversion_coefficients(int g);

/// riemann_quartic_check for every characteristic at every point.
std::vector<IdentityResidual> verify_quartic(const PeriodMatrix& tau,
                                             const std::vector<Point>& points,
                                             const TruncationPolicy& policy = {});

/// inversion_check for every even characteristic at every point.
std::vector<IdentityResidual> verify_inversion(const PeriodMatrix& tau,
                                               const std::vector<Point>& points,
                                               const TruncationPolicy& policy = {});

}  // namespace theta4
