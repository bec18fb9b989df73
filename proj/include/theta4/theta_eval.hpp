#pragma once

// Theta functions with characteristics on the Siegel upper half-space,
//
//   theta[a1;a2](z, tau) = sum_{m in Z^g} exp(pi i (n^T tau n + 2 n^T (z + a2/2))),
//   n = m + a1/2,
//
// evaluated as a truncated lattice sum with a rigorous Gaussian tail bound.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "theta4/char2.hpp"

namespace theta4 {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Point = Eigen::VectorXcd;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kMinImagEigenvalue = 1e-6;

/// A point of the Siegel upper half-space: symmetric, Im(tau) positive
/// definite with smallest eigenvalue at least kMinImagEigenvalue.
class PeriodMatrix {
 public:
  /// Throws InputError when the invariants fail.
  explicit PeriodMatrix(ComplexMatrix tau);

  static PeriodMatrix diagonal(const std::vector<Complex>& entries);
  /// Block-diagonal assembly.
  static PeriodMatrix block_diagonal(const std::vector<PeriodMatrix>& blocks);

  int genus() const { return static_cast<int>(tau_.rows()); }
  const ComplexMatrix& tau() const { return tau_; }
  Eigen::MatrixXd imag() const { return tau_.imag(); }
  const Eigen::MatrixXd& imag_inverse() const { return imag_inverse_; }
  double lambda_min() const { return lambda_min_; }

  bool operator==(const PeriodMatrix& o) const { return tau_ == o.tau_; }

 private:
  ComplexMatrix tau_;
  Eigen::MatrixXd imag_inverse_;
  double lambda_min_ = 0.0;
};

struct TruncationPolicy {
  double target_eps = 1e-11;  // absolute bound on the discarded tail
  int max_radius = 64;

  /// Throws InputError unless target_eps >= 1e-14 and 1 <= max_radius <= 64.
  void validate() const;
};

struct ThetaValue {
  Complex value;
  double error_bound = 0.0;  // rigorous bound on |value - true sum|
  int radius = 0;            // half-width of the summation box
};

/// Smallest radius whose tail bound is at most policy.target_eps, and that
/// bound. Throws TruncationError if the radius exceeds policy.max_radius.
struct RadiusChoice {
  int radius = 0;
  double error_bound = 0.0;
};
RadiusChoice choose_radius(const Point& z, const PeriodMatrix& tau,
                           const TruncationPolicy& policy);

ThetaValue theta_with_char(const Characteristic& c, const Point& z, const PeriodMatrix& tau,
                           const TruncationPolicy& policy = {});

/// The same lattice sum over a box of the given half-width; error_bound is
/// the tail bound for that radius.
ThetaValue theta_fixed_radius(const Characteristic& c, const Point& z, const PeriodMatrix& tau,
                              int radius);

/// Tail bound for a box of the given half-width around the summand peak.
double tail_bound(const Point& z, const PeriodMatrix& tau, int radius);

struct NullValue {
  Characteristic characteristic;
  Complex value;
};

/// theta[c](0, tau) for every even c, canonical order.
std::vector<NullValue> theta_nulls(const PeriodMatrix& tau, const TruncationPolicy& policy = {});

/// The 2-torsion point attached to a: z_a = (a2 + tau a1) / 2, bits lifted
/// to 0/1. With this lift theta[k](2 z_a) = e_a <k, a> theta[k](0) for a
/// factor e_a independent of k.
Point two_torsion_point(const Characteristic& a, const PeriodMatrix& tau);

/// tau = S + i (B B^T + floor I), S symmetric and B with entries uniform in
/// [-1/2, 1/2], drawn from a generator seeded with seed.
PeriodMatrix random_tau(int g, std::uint64_t seed, double floor = 1.0);

/// z = u + tau v with u, v uniform in [0, 1)^g: a point of one fundamental
/// cell.
Point sample_point(const PeriodMatrix& tau, std::mt19937_64& rng);
std::vector<Point> sample_points(const PeriodMatrix& tau, std::size_t n, std::uint64_t seed);

}  // namespace theta4
