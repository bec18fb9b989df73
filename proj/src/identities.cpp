#include "theta4/identities.hpp"

#include <algorithm>
#include <cmath>

#include "theta4/errors.hpp"
#include "theta4/parallel.hpp"

namespace theta4 {

namespace {

Complex fourth_power(Complex x) {
  const Complex sq = x * x;
  return sq * sq;
}

}  // namespace

IdentityResidual make_residual(Complex lhs, Complex rhs, double term_scale,
                               const Characteristic& c, const Point& z,
                               const TruncationPolicy& policy) {
  IdentityResidual r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  r.term_scale = std::max({term_scale, std::abs(lhs), std::abs(rhs)});
  r.scaled_residual = r.abs_residual / std::max(r.term_scale, 1e-30);
  r.characteristic = c;
  r.z = z;
  r.policy = policy;
  return r;
}

IdentityResidual riemann_quartic_check(const Characteristic& c, const Point& z,
                                       const PeriodMatrix& tau, const TruncationPolicy& policy,
                                       std::optional<Characteristic> suppress_null) {
  const int g = tau.genus();
  if (c.genus() != g) throw InputError("characteristic genus does not match period matrix");
  const Point zero = Point::Zero(g);
  const Point twice = 2.0 * z;

  const Complex lhs = fourth_power(theta_with_char(c, z, tau, policy).value);
  const double inv_two_g = std::ldexp(1.0, -g);
  Complex rhs = 0.0;
  double scale = 0.0;
  for (const auto& b : enumerate_characteristics(g)) {
    if (suppress_null && *suppress_null == b) continue;
    const Complex null = theta_with_char(b, zero, tau, policy).value;
    const Complex at_2z = theta_with_char(b, twice, tau, policy).value;
    const Complex term = inv_two_g * null * null * null * at_2z;
    scale = std::max(scale, std::abs(term));
    rhs += static_cast<double>(weil_pairing(c, b).value()) * term;
  }
  return make_residual(lhs, rhs, scale, c, z, policy);
}

IdentityResidual inversion_check(const Characteristic& c, const Point& z,
                                 const PeriodMatrix& tau, const TruncationPolicy& policy,
                                 std::optional<Characteristic> suppress_null) {
  const int g = tau.genus();
  if (c.genus() != g) throw InputError("characteristic genus does not match period matrix");
  if (!is_even(c)) {
    throw InputError("inversion identity requires an even characteristic, got " + c.to_string());
  }
  const double two_g = std::ldexp(1.0, g);

  Complex lhs = 0.0;
  if (!(suppress_null && *suppress_null == c)) {
    const Complex null = theta_with_char(c, Point::Zero(g), tau, policy).value;
    lhs = two_g * null * null * null * theta_with_char(c, 2.0 * z, tau, policy).value;
  }

  Complex rhs = -two_g * fourth_power(theta_with_char(c, z, tau, policy).value);
  double scale = std::abs(rhs);
  for (const auto& a : even_characteristics(g)) {
    const Complex term = 2.0 * fourth_power(theta_with_char(a, z, tau, policy).value);
    scale = std::max(scale, std::abs(term));
    rhs += static_cast<double>(weil_pairing(a, c).value()) * term;
  }
  return make_residual(lhs, rhs, scale, c, z, policy);
}

RationalMatrix derive_inversion_coefficients(int g) {
  if (g < 1 || g > 4) throw InputError("inversion coefficients supported for 1 <= g <= 4");
  return inversion_coefficients(g);
}

std::vector<IdentityResidual> verify_quartic(const PeriodMatrix& tau,
                                             const std::vector<Point>& points,
                                             const TruncationPolicy& policy) {
  const auto chars = enumerate_characteristics(tau.genus());
  std::vector<IdentityResidual> out(points.size() * chars.size());
  parallel_for(out.size(), [&](std::size_t k) {
    out[k] = riemann_quartic_check(chars[k % chars.size()], points[k / chars.size()], tau, policy);
  });
  return out;
}

std::vector<IdentityResidual> verify_inversion(const PeriodMatrix& tau,
                                               const std::vector<Point>& points,
                                               const TruncationPolicy& policy) {
  const auto chars = even_characteristics(tau.genus());
  std::vector<IdentityResidual> out(points.size() * chars.size());
  parallel_for(out.size(), [&](std::size_t k) {
    out[k] = inversion_check(chars[k % chars.size()], points[k / chars.size()], tau, policy);
  });
  return out;
}

}  // namespace theta4
