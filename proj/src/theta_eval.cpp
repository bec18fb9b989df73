#include "theta4/theta_eval.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "theta4/errors.hpp"
#include "theta4/parallel.hpp"

namespace theta4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRadiusSearchCap = 1 << 16;

double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// log of sum_{k > radius} (2k+1)^g exp(-pi lambda (k-1)^2): every lattice
// point with sup-distance in (k-1, k] from the centre contributes at most
// exp(-pi lambda (k-1)^2), and there are at most (2k+1)^g of them.
double log_shell_tail(int g, double lambda, int radius) {
  double acc = -std::numeric_limits<double>::infinity();
  for (int k = radius + 1;; ++k) {
    const double d = k - 1;
    const double term = g * std::log(2.0 * k + 1.0) - kPi * lambda * d * d;
    acc = log_sum_exp(acc, term);
    if (d > 0 && term < acc - 50.0 && kPi * lambda * (2.0 * d + 1.0) > g) break;
  }
  return acc;
}

void check_point(const Point& z, int g) {
  if (z.size() != g) {
    throw InputError("point has " + std::to_string(z.size()) + " coordinates, expected " +
                     std::to_string(g));
  }
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (!std::isfinite(z[j].real()) || !std::isfinite(z[j].imag())) {
      throw InputError("point has non-finite coordinates");
    }
  }
}

}  // namespace

PeriodMatrix::PeriodMatrix(ComplexMatrix tau) : tau_(std::move(tau)) {
  if (tau_.rows() == 0 || tau_.rows() != tau_.cols()) {
    throw InputError("period matrix must be square and nonempty");
  }
  if (tau_.rows() > kMaxCharGenus) {
    throw InputError("period matrix genus exceeds " + std::to_string(kMaxCharGenus));
  }
  for (Eigen::Index i = 0; i < tau_.rows(); ++i) {
    for (Eigen::Index j = 0; j < tau_.cols(); ++j) {
      const Complex x = tau_(i, j);
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw InputError("period matrix has non-finite entries");
      }
      if (std::abs(x - tau_(j, i)) > kSymmetryTolerance) {
        throw InputError("period matrix is not symmetric");
      }
    }
  }
  const Eigen::MatrixXd y = tau_.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(y, Eigen::EigenvaluesOnly);
  lambda_min_ = eig.eigenvalues().minCoeff();
  if (!(lambda_min_ >= kMinImagEigenvalue)) {
    throw InputError("imaginary part of the period matrix is not positive definite "
                     "(smallest eigenvalue " + std::to_string(lambda_min_) + ")");
  }
  imag_inverse_ = y.inverse();
}

PeriodMatrix PeriodMatrix::diagonal(const std::vector<Complex>& entries) {
  const auto g = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix tau = ComplexMatrix::Zero(g, g);
  for (Eigen::Index j = 0; j < g; ++j) tau(j, j) = entries[j];
  return PeriodMatrix(std::move(tau));
}

PeriodMatrix PeriodMatrix::block_diagonal(const std::vector<PeriodMatrix>& blocks) {
  Eigen::Index g = 0;
  for (const auto& b : blocks) g += b.genus();
  ComplexMatrix tau = ComplexMatrix::Zero(g, g);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    tau.block(off, off, b.genus(), b.genus()) = b.tau();
    off += b.genus();
  }
  return PeriodMatrix(std::move(tau));
}

void TruncationPolicy::validate() const {
  if (!(target_eps >= 1e-14) || !std::isfinite(target_eps)) {
    throw InputError("target_eps must be at least 1e-14");
  }
  if (max_radius < 1 || max_radius > 64) {
    throw InputError("max_radius must lie in [1, 64]");
  }
}

namespace {

double log_tail_bound(const Point& z, const PeriodMatrix& tau, int radius) {
  const Eigen::VectorXd y = z.imag();
  // Every summand is bounded by exp(pi y^T Y^{-1} y) times a Gaussian in the
  // distance from the recentred box.
  const double log_prefactor = kPi * y.dot(tau.imag_inverse() * y);
  return log_prefactor + log_shell_tail(tau.genus(), tau.lambda_min(), radius);
}

}  // namespace

double tail_bound(const Point& z, const PeriodMatrix& tau, int radius) {
  check_point(z, tau.genus());
  if (radius < 1) throw InputError("radius must be positive");
  return std::exp(log_tail_bound(z, tau, radius));
}

RadiusChoice choose_radius(const Point& z, const PeriodMatrix& tau,
                           const TruncationPolicy& policy) {
  policy.validate();
  check_point(z, tau.genus());
  const double log_target = std::log(policy.target_eps);
  for (int r = 1; r <= kRadiusSearchCap; ++r) {
    const double log_bound = log_tail_bound(z, tau, r);
    if (log_bound <= log_target) {
      if (r > policy.max_radius) {
        throw TruncationError("tail bound " + std::to_string(policy.target_eps) +
                                  " needs radius " + std::to_string(r) + " > cap " +
                                  std::to_string(policy.max_radius),
                              r);
      }
      return {r, std::exp(log_bound)};
    }
  }
  throw TruncationError("tail bound unreachable", kRadiusSearchCap);
}

ThetaValue theta_with_char(const Characteristic& c, const Point& z, const PeriodMatrix& tau,
                           const TruncationPolicy& policy) {
  if (c.genus() != tau.genus()) {
    throw InputError("characteristic genus does not match period matrix");
  }
  const RadiusChoice choice = choose_radius(z, tau, policy);
  ThetaValue v = theta_fixed_radius(c, z, tau, choice.radius);
  v.error_bound = choice.error_bound;
  return v;
}

ThetaValue theta_fixed_radius(const Characteristic& c, const Point& z, const PeriodMatrix& tau,
                              int radius) {
  const int g = tau.genus();
  if (c.genus() != g) throw InputError("characteristic genus does not match period matrix");
  check_point(z, g);
  if (radius < 1) throw InputError("radius must be positive");

  Eigen::VectorXd half_a1(g);
  Point shifted_z(g);
  for (int j = 0; j < g; ++j) {
    half_a1[j] = 0.5 * c.a1_bit(j);
    shifted_z[j] = z[j] + 0.5 * c.a2_bit(j);
  }
  // Summand modulus peaks at n = -Y^{-1} Im z.
  const Eigen::VectorXd centre = -(tau.imag_inverse() * z.imag());

  std::vector<long> lo(g), hi(g), m(g);
  for (int j = 0; j < g; ++j) {
    lo[j] = static_cast<long>(std::ceil(centre[j] - half_a1[j] - radius));
    hi[j] = static_cast<long>(std::floor(centre[j] - half_a1[j] + radius));
    m[j] = lo[j];
  }

  const ComplexMatrix& t = tau.tau();
  const Complex pi_i(0.0, kPi);
  Complex sum = 0.0;
  Eigen::VectorXcd n(g);
  while (true) {
    for (int j = 0; j < g; ++j) n[j] = static_cast<double>(m[j]) + half_a1[j];
    const Complex quad = n.transpose() * t * n;
    const Complex lin = n.transpose() * shifted_z;
    sum += std::exp(pi_i * (quad + 2.0 * lin));

    int j = g - 1;
    while (j >= 0 && m[j] == hi[j]) {
      m[j] = lo[j];
      --j;
    }
    if (j < 0) break;
    ++m[j];
  }
  return {sum, std::exp(log_tail_bound(z, tau, radius)), radius};
}

std::vector<NullValue> theta_nulls(const PeriodMatrix& tau, const TruncationPolicy& policy) {
  const auto evens = even_characteristics(tau.genus());
  const Point zero = Point::Zero(tau.genus());
  std::vector<NullValue> out(evens.size());
  parallel_for(evens.size(), [&](std::size_t i) {
    out[i] = {evens[i], theta_with_char(evens[i], zero, tau, policy).value};
  });
  return out;
}

Point two_torsion_point(const Characteristic& a, const PeriodMatrix& tau) {
  const int g = tau.genus();
  if (a.genus() != g) throw InputError("characteristic genus does not match period matrix");
  Eigen::VectorXcd p(g), q(g);
  for (int j = 0; j < g; ++j) {
    p[j] = a.a2_bit(j);
    q[j] = a.a1_bit(j);
  }
  return 0.5 * (p + tau.tau() * q);
}

PeriodMatrix random_tau(int g, std::uint64_t seed, double floor) {
  if (g < 1 || g > kMaxCharGenus) throw InputError("genus out of range for random_tau");
  if (!(floor > 0.0)) throw InputError("floor must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  Eigen::MatrixXd s(g, g), b(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) s(i, j) = s(j, i) = unif(rng);
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) b(i, j) = unif(rng);
  }
  Eigen::MatrixXd y = b * b.transpose() + floor * Eigen::MatrixXd::Identity(g, g);
  y = 0.5 * (y + y.transpose()).eval();
  ComplexMatrix tau(g, g);
  tau.real() = s;
  tau.imag() = y;
  return PeriodMatrix(std::move(tau));
}

Point sample_point(const PeriodMatrix& tau, std::mt19937_64& rng) {
  const int g = tau.genus();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXcd u(g), v(g);
  for (int j = 0; j < g; ++j) u[j] = unif(rng);
  for (int j = 0; j < g; ++j) v[j] = unif(rng);
  return u + tau.tau() * v;
}

std::vector<Point> sample_points(const PeriodMatrix& tau, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_point(tau, rng));
  return out;
}

}  // namespace theta4
